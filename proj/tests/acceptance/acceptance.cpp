// Runs acceptance criteria and prints one pass/fail line per criterion.
// Usage: acceptance [--criterion N]... [--threads N] [--seed U64] [--verbose]

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "srtl/acceptance.hpp"
#include "srtl/parallel.hpp"

int main(int argc, char** argv) {
    std::vector<int> ids;
    srtl::acceptance::Context ctx;
    bool verbose = false;
    try {
        for (int i = 1; i < argc; ++i) {
            const std::string a = argv[i];
            auto next = [&]() -> std::string {
                if (i + 1 >= argc) throw std::invalid_argument(a + " needs a value");
                return argv[++i];
            };
            if (a == "--criterion") ids.push_back(std::stoi(next()));
            else if (a == "--threads") srtl::set_thread_count(std::stoi(next()));
            else if (a == "--seed") ctx.seed = std::stoull(next());
            else if (a == "--verbose") verbose = true;
            else throw std::invalid_argument("unknown argument " + a);
        }
    } catch (const std::exception& e) {
        std::cerr << "acceptance: " << e.what() << "\n";
        return 2;
    }
    if (ids.empty())
        for (int i = 1; i <= srtl::acceptance::criterion_count; ++i) ids.push_back(i);

    bool all = true;
    for (int id : ids) {
        try {
            const auto r = srtl::acceptance::run_criterion(id, ctx);
            std::cout << srtl::acceptance::summary_line(r) << std::endl;
            if (verbose)
                for (const auto& n : r.notes) std::cout << "    " << n << "\n";
            all = all && r.pass();
        } catch (const std::exception& e) {
            std::cout << "criterion " << id << " FAIL | error: " << e.what() << std::endl;
            all = false;
        }
    }
    return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
