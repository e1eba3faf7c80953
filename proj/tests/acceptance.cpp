// Acceptance suite: runs every verification criterion and prints one
// pass/fail line each, as they complete. Exit code 0 iff all pass.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "kpzlab/verify.hpp"

int main(int argc, char** argv) {
    kpzlab::VerifyOptions opt;
    opt.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* env = std::getenv("KPZLAB_THREADS")) opt.threads = std::atoi(env);
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    if (ids.empty())
        for (int id = 1; id <= 11; ++id) ids.push_back(id);

    int failures = 0, ran = 0;
    for (int id : ids) {
        const auto results = kpzlab::run_acceptance(opt, {id});
        for (const auto& r : results) {
            std::printf("%s  C%02d %-26s (%.1fs)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.seconds, r.detail.c_str());
            std::fflush(stdout);
            ++ran;
            if (!r.pass) ++failures;
        }
    }
    std::printf("%d/%d criteria passed\n", ran - failures, ran);
    return failures == 0 ? 0 : 1;
}
