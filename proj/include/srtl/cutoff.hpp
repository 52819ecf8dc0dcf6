#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "srtl/geometry.hpp"
#include "srtl/vec.hpp"

namespace srtl {

// Truncated Taylor series: c[j] = f^(j)(t0) / j!, j = 0..order.
class Jet {
public:
    static constexpr int max_order = 31;

    explicit Jet(int order = 0) : n_(order) {
        if (order < 0 || order > max_order) throw std::invalid_argument("jet order out of range");
        c_.fill(0.0);
    }
    static Jet constant(double v, int order) {
        Jet j(order);
        j.c_[0] = v;
        return j;
    }
    static Jet variable(double t0, int order) {
        Jet j(order);
        j.c_[0] = t0;
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    int order() const { return n_; }
    double value() const { return c_[0]; }
    double coeff(int j) const { return c_[j]; }
    double& coeff(int j) { return c_[j]; }

    double derivative(int j) const {
        double f = 1.0;
        for (int i = 2; i <= j; ++i) f *= i;
        return c_[j] * f;
    }

    Jet& operator+=(const Jet& o) {
        for (int i = 0; i <= n_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int i = 0; i <= n_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator*=(double s) {
        for (int i = 0; i <= n_; ++i) c_[i] *= s;
        return *this;
    }
    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { a.c_[0] += s; return a; }
    friend Jet operator+(double s, Jet a) { a.c_[0] += s; return a; }
    friend Jet operator-(Jet a, double s) { a.c_[0] -= s; return a; }
    friend Jet operator-(double s, Jet a) {
        a *= -1.0;
        a.c_[0] += s;
        return a;
    }
    friend Jet operator-(Jet a) { return a *= -1.0; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r(a.n_);
        for (int i = 0; i <= a.n_; ++i)
            for (int j = 0; i + j <= a.n_; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        return r;
    }

    friend Jet recip(const Jet& a) {
        Jet r(a.n_);
        r.c_[0] = 1.0 / a.c_[0];
        for (int j = 1; j <= a.n_; ++j) {
            double s = 0.0;
            for (int i = 1; i <= j; ++i) s += a.c_[i] * r.c_[j - i];
            r.c_[j] = -s * r.c_[0];
        }
        return r;
    }
    friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

    friend Jet exp(const Jet& a) {
        Jet r(a.n_);
        r.c_[0] = std::exp(a.c_[0]);
        for (int j = 1; j <= a.n_; ++j) {
            double s = 0.0;
            for (int i = 1; i <= j; ++i) s += i * a.c_[i] * r.c_[j - i];
            r.c_[j] = s / j;
        }
        return r;
    }

private:
    int n_;
    std::array<double, max_order + 1> c_;
};

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }
inline double recip(double x) { return 1.0 / x; }

template <class T>
T ipow(const T& x, int p) {
    T r = x * 0.0 + 1.0;
    for (int i = 0; i < p; ++i) r = r * x;
    return r;
}

// C-infinity step: 0 for x <= 0, 1 for x >= 1.
template <class T>
T smooth_step(const T& x) {
    using std::exp;
    const double v = value_of(x);
    if (v <= 0.0) return x * 0.0;
    if (v >= 1.0) return x * 0.0 + 1.0;
    const T e0 = exp(-recip(x));
    const T e1 = exp(-recip(1.0 - x));
    return e0 / (e0 + e1);
}

enum class TaperFamily { Polynomial, Plateau };

// Plus keeps the part of h near d (h+) and vanishes identically near c;
// Minus keeps the part near c.
enum class Side { Both, Plus, Minus };

struct CutoffProfile {
    TaperFamily family = TaperFamily::Polynomial;
    int k_lo = 0;  // vanishing order at c
    int k_hi = 0;  // vanishing order at d
    double c = -1.0;
    double d = 1.0;
    double taper = 0.5;  // Plateau only: fraction of the half-length used by each taper
    Side side = Side::Both;

    static CutoffProfile polynomial(int k, double c = -1.0, double d = 1.0) {
        CutoffProfile p;
        p.k_lo = p.k_hi = k;
        p.c = c;
        p.d = d;
        p.validate();
        return p;
    }

    static CutoffProfile plateau(int k, double taper, double c = -1.0, double d = 1.0) {
        CutoffProfile p = polynomial(k, c, d);
        p.family = TaperFamily::Plateau;
        p.taper = taper;
        p.validate();
        return p;
    }

    CutoffProfile one_sided(Side s) const {
        CutoffProfile p = *this;
        p.side = s;
        return p;
    }

    void validate() const {
        if (k_lo < 0 || k_hi < 0) throw std::invalid_argument("vanishing order must be nonnegative");
        if (!(d > c)) throw std::invalid_argument("cutoff interval must have d > c");
        if (family == TaperFamily::Plateau && !(taper > 0.0 && taper < 1.0))
            throw std::invalid_argument("plateau taper fraction must lie in (0,1)");
    }

    // Vanishing order at an endpoint, -1 when the profile is identically
    // zero near it (dead side of a one-sided profile).
    int order_at_lo() const { return side == Side::Plus ? -1 : k_lo; }
    int order_at_hi() const { return side == Side::Minus ? -1 : k_hi; }

    // Start and end of the one-sided transition band.
    double split_lo() const { return c + 0.25 * (d - c); }
    double split_hi() const { return d - 0.25 * (d - c); }

    // True if h vanishes on the whole neighborhood [tau - r, tau + r].
    bool vanishes_near(double tau, double r) const {
        if (tau + r < c || tau - r > d) return true;
        if (side == Side::Plus && tau + r <= split_lo()) return true;
        if (side == Side::Minus && tau - r >= split_hi()) return true;
        return false;
    }

    std::string family_name() const {
        std::string s = family == TaperFamily::Polynomial ? "polynomial" : "plateau";
        if (side == Side::Plus) s += "+";
        if (side == Side::Minus) s += "-";
        return s;
    }

    // Profile inside [c, d]; T is double or Jet.
    template <class T>
    T evaluate(const T& tau) const {
        T h = base(tau);
        if (side == Side::Both) return h;
        const T psi = smooth_step((tau - split_lo()) * (1.0 / (split_hi() - split_lo())));
        return side == Side::Plus ? h * psi : h - h * psi;
    }

    double operator()(double tau) const {
        if (tau < c || tau > d) return 0.0;
        return evaluate(tau);
    }

private:
    template <class T>
    T base(const T& tau) const {
        if (family == TaperFamily::Polynomial) {
            const double scale = std::pow(0.5 * (d - c), -(k_lo + k_hi));
            return ipow(d - tau, k_hi) * ipow(tau - c, k_lo) * scale;
        }
        const double len = taper * 0.5 * (d - c);
        return ramp((tau - c) * (1.0 / len), k_lo) * ramp((d - tau) * (1.0 / len), k_hi);
    }

    // s^k near 0, exactly 1 for s >= 2/3, smooth in between.
    template <class T>
    static T ramp(const T& s, int k) {
        if (value_of(s) >= 2.0 / 3.0) return s * 0.0 + 1.0;
        const T w = smooth_step(3.0 * s - 1.0);
        return ipow(s, k) * (1.0 - w) + w;
    }
};

// h^(deriv)(tau); zero outside [c, d], one-sided limits at the endpoints.
inline double eval_cutoff(const CutoffProfile& p, double tau, int deriv_order) {
    if (deriv_order < 0) throw std::invalid_argument("derivative order must be nonnegative");
    if (tau < p.c || tau > p.d) return 0.0;
    if (deriv_order == 0) return p.evaluate(tau);
    return p.evaluate(Jet::variable(tau, deriv_order)).derivative(deriv_order);
}

// chi(z) = h(z2) in 2D and h2(z2) h3(z3) in 3D.
template <int N>
struct CutoffSpec {
    std::array<CutoffProfile, N - 1> h;

    static CutoffSpec uniform(const CutoffProfile& proto, const GammaSpec<N>& gamma) {
        CutoffSpec s;
        for (int i = 0; i < N - 1; ++i) {
            s.h[i] = proto;
            s.h[i].c = -gamma.half[i];
            s.h[i].d = gamma.half[i];
            s.h[i].validate();
        }
        return s;
    }

    // Total vanishing order used for bookkeeping (equal orders assumed).
    int k() const { return h[0].k_lo; }
};

template <int N>
double eval_chi(const CutoffSpec<N>& spec, const Vec<N>& z) {
    double v = 1.0;
    for (int i = 0; i < N - 1; ++i) v *= spec.h[i](z[i + 1]);
    return v;
}

}  // namespace srtl
