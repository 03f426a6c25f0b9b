// Benchmark comparing the serial reference kernels against the OpenMP
// parallel ones: the per-representation verification loop and the character
// orthogonality sum.  Outputs must be byte-identical; the timings are the
// point.

#include <chrono>
#include <iostream>

#include "ftv/classify.hpp"
#include "ftv/reps.hpp"
#include "ftv/verify.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ftv::FormData fixture_11a() {
    ftv::FormData f;
    f.label = "11a";
    f.weight = 2;
    f.level_N = 11;
    const std::array<std::int64_t, 5> curve{0, -1, 1, -10, -20};
    for (std::int64_t q : {2, 3, 5, 7, 13, 17, 19, 23})
        f.coefficients[q] = ftv::count_points_weight2(curve, q);
    f.special[11] = 1;
    ftv::validate_form(f);
    return f;
}

}  // namespace

int main(int argc, char** argv) {
    bool quick = argc > 1 && std::string(argv[1]) == "--quick";
    std::cout << "threads available: " << ftv::hardware_threads() << "\n";

    ftv::FormData form = fixture_11a();
    ftv::VerifyOptions opts;
    opts.p = 5;
    opts.a = 22;  // P1 = {11}, P2 = {2}
    opts.level = quick ? 1 : 2;
    opts.precision = 40;

    opts.exec = ftv::Exec::Serial;
    auto t0 = std::chrono::steady_clock::now();
    ftv::VerificationReport serial = ftv::verify_functional_equation(form, opts);
    double ts = seconds_since(t0);

    opts.exec = ftv::Exec::Parallel;
    t0 = std::chrono::steady_clock::now();
    ftv::VerificationReport parallel = ftv::verify_functional_equation(form, opts);
    double tp = seconds_since(t0);

    bool identical = ftv::report_json(serial) == ftv::report_json(parallel);
    std::cout << "verify kernel (p=5, a=22, n=" << opts.level << "): serial " << ts
              << " s, parallel " << tp << " s, speedup " << (tp > 0 ? ts / tp : 0)
              << "x, reports identical: " << (identical ? "yes" : "NO") << "\n";

    std::vector<ftv::ArtinRep> reps = ftv::enumerate_irreps(5, quick ? 1 : 2, 40);
    t0 = std::chrono::steady_clock::now();
    ftv::OrthogonalityResult os = ftv::character_orthogonality(reps, ftv::Exec::Serial);
    double os_t = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    ftv::OrthogonalityResult op = ftv::character_orthogonality(reps, ftv::Exec::Parallel);
    double op_t = seconds_since(t0);
    std::cout << "orthogonality kernel (p=5, n=" << (quick ? 1 : 2) << "): serial " << os_t
              << " s, parallel " << op_t << " s, speedup " << (op_t > 0 ? os_t / op_t : 0)
              << "x, both " << (os.ok && op.ok ? "exact" : "FAILED") << "\n";

    return identical && os.ok && op.ok ? 0 : 1;
}
