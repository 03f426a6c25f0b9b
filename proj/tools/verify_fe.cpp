// verify-fe: exact-arithmetic checker for the compatibility between the
// exceptional divisor of the algebraic functional equation and the analytic
// Euler-factor ratios of a modular form over a false-Tate tower, at a finite
// level.  Subcommands expose the underlying layers (lemma-check, euler,
// classify, eval-charelem, irreps, count-points).

#include <array>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ftv/classify.hpp"
#include "ftv/verify.hpp"

namespace {

ftv::TwistConvention parse_twist(const std::string& s) {
    if (s == "paper-display") return ftv::TwistConvention::PaperDisplay;
    if (s == "paper-text") return ftv::TwistConvention::PaperText;
    throw ftv::SchemaViolation("unknown twist convention: " + s);
}

struct RepFlags {
    int tame = 0;
    int wild = 0;
    int theta = 0;
};

void add_rep_flags(CLI::App* cmd, RepFlags& rf) {
    cmd->add_option("--tame", rf.tame, "tame exponent i of psi (mod p-1)");
    cmd->add_option("--wild", rf.wild, "wild exponent j of psi (mod p^(n-1))");
    cmd->add_option("--theta", rf.theta, "theta level m (0 for a 1-dimensional psi)");
}

int run_verify(const std::string& form_path, std::int64_t a, std::int64_t p, int level,
               int precision, const std::string& twist, const std::string& report_path,
               const std::string& format, bool serial) {
    ftv::FormData form = ftv::ingest_form(form_path);
    ftv::VerifyOptions opts;
    opts.p = p;
    opts.a = a;
    opts.level = level;
    opts.precision = precision;
    opts.twist = parse_twist(twist);
    opts.exec = serial ? ftv::Exec::Serial : ftv::Exec::Parallel;
    ftv::VerificationReport rep = ftv::verify_functional_equation(form, opts);
    ftv::emit_report(rep, format, report_path);
    return ftv::report_exit_code(rep);
}

int run_lemma_check(std::int64_t p, int n, std::int64_t q, std::int64_t x, const RepFlags& rf,
                    int precision) {
    ftv::ArtinRep rep(p, n, precision, ftv::RepLabel{rf.tame, rf.wild, rf.theta});
    ftv::DecompData dd = ftv::decomposition_data(q, p, n);
    ftv::Matrix<ftv::PadicScalar> xm(1, 1, ftv::PadicScalar::from_integer(p, precision, x));
    ftv::EvalResult oracle_n = ftv::evaluate({dd, xm, ftv::ModuleKind::N}, rep);
    ftv::EvalResult oracle_m = ftv::evaluate({dd, xm, ftv::ModuleKind::M}, rep);
    if (oracle_n.indeterminate || oracle_m.indeterminate) {
        std::cout << "oracle determinant vanished (indeterminate)\n";
        return 1;
    }
    bool ok = true;
    if (rf.theta == 0) {
        ftv::CycElem psi_f = rep.psi_value(dd.frob.u);
        ftv::CycElem xe = ftv::CycElem::from_scalar(ftv::PadicScalar::from_integer(p, precision, x));
        ftv::CycElem closed_n = psi_f - xe;
        ftv::CycElem closed_m =
            psi_f - xe.scaled(ftv::PadicScalar::from_integer(p, precision, q));
        ftv::CycElem diff_n = closed_n - oracle_n.value;
        ftv::CycElem diff_m = closed_m - oracle_m.value;
        std::cout << "kind N: closed = " << closed_n.str() << ", oracle = " << oracle_n.value.str()
                  << ", difference = " << diff_n.str() << "\n";
        std::cout << "kind M: closed = " << closed_m.str() << ", oracle = " << oracle_m.value.str()
                  << ", difference = " << diff_m.str() << "\n";
        ok = diff_n.is_zero() && diff_m.is_zero();
    } else {
        ftv::CycElem diff = oracle_n.value - oracle_m.value;
        std::cout << "kind N oracle = " << oracle_n.value.str() << "\n";
        std::cout << "kind M oracle = " << oracle_m.value.str() << "\n";
        std::cout << "difference = " << diff.str() << "\n";
        ok = diff.is_zero();
        if (ok && !oracle_m.value.is_zero())
            std::cout << "ratio = " << (oracle_n.value * oracle_m.value.invert()).str() << "\n";
    }
    std::cout << (ok ? "ok\n" : "MISMATCH\n");
    return ok ? 0 : 1;
}

int run_euler(const std::string& form_path, std::int64_t p, int n, std::int64_t q,
              const RepFlags& rf, int precision) {
    ftv::FormData form = ftv::ingest_form(form_path);
    ftv::ArtinRep rep(p, n, precision, ftv::RepLabel{rf.tame, rf.wild, rf.theta});
    ftv::ArtinRep dual = rep.contragredient();
    ftv::EulerFactorValue num = ftv::euler_factor(form, rep, q);
    ftv::EulerFactorValue den = ftv::euler_factor(form, dual, q);
    std::cout << "P_q(f, eta, q^{-k/2})  = " << num.value.str() << "  (degree " << num.degree
              << ")\n";
    std::cout << "P_q(f, eta*, q^{-k/2}) = " << den.value.str() << "  (degree " << den.degree
              << ")\n";
    if (den.value.is_zero()) {
        std::cout << "ratio: division by a vanishing factor\n";
        return 1;
    }
    ftv::CycElem ratio = num.value * den.value.invert();
    std::cout << "ratio = " << ratio.str() << ", valuation " << ratio.valuation().str() << "\n";
    return 0;
}

int run_classify(const std::string& form_path, std::int64_t a, std::int64_t p, int level,
                 int precision, const std::string& twist) {
    ftv::FormData form = ftv::ingest_form(form_path);
    ftv::PrimeClassification cls =
        ftv::classify_primes(form, a, p, level, precision, parse_twist(twist));
    if (form.classification_override)
        cls = ftv::apply_override(std::move(cls), *form.classification_override);
    for (const auto& e : cls.evidence)
        std::cout << "q = " << e.q << ": " << e.cls << " (" << e.reason << ")\n";
    for (const auto& w : cls.warnings) std::cout << "warning: " << w << "\n";
    std::cout << "P0 = {";
    for (std::size_t i = 0; i < cls.P0.size(); ++i) std::cout << (i ? "," : "") << cls.P0[i];
    std::cout << "}  P1 = {";
    for (std::size_t i = 0; i < cls.P1.size(); ++i) std::cout << (i ? "," : "") << cls.P1[i];
    std::cout << "}  P2 = {";
    for (std::size_t i = 0; i < cls.P2.size(); ++i) std::cout << (i ? "," : "") << cls.P2[i];
    std::cout << "}\n";
    return 0;
}

int run_eval_charelem(std::int64_t p, int n, std::int64_t q, const std::string& kind,
                      std::int64_t x, const RepFlags& rf, int precision) {
    ftv::ArtinRep rep(p, n, precision, ftv::RepLabel{rf.tame, rf.wild, rf.theta});
    ftv::DecompData dd = ftv::decomposition_data(q, p, n);
    ftv::Matrix<ftv::PadicScalar> xm(1, 1, ftv::PadicScalar::from_integer(p, precision, x));
    ftv::ModuleKind mk = kind == "M" ? ftv::ModuleKind::M : ftv::ModuleKind::N;
    ftv::EvalResult r = ftv::evaluate({dd, xm, mk}, rep);
    if (r.indeterminate) {
        std::cout << "indeterminate (determinant vanishes at the tracked precision)\n";
        return 1;
    }
    std::cout << "value = " << r.value.str() << "\n";
    std::cout << "valuation = " << r.valuation.str() << "\n";
    return 0;
}

int run_irreps(std::int64_t p, int n, int precision) {
    std::vector<ftv::ArtinRep> reps = ftv::enumerate_irreps(p, n, precision);
    std::int64_t sum = 0;
    for (const auto& r : reps) {
        auto [dp, dm] = ftv::complex_conjugation_signs(r);
        std::cout << r.name() << ": dim " << r.dim() << ", d+ = " << dp << ", d- = " << dm << "\n";
        sum += static_cast<std::int64_t>(r.dim()) * r.dim();
    }
    std::cout << reps.size() << " irreducibles, sum of dim^2 = " << sum << "\n";
    return 0;
}

int run_count_points(std::int64_t a1, std::int64_t a2, std::int64_t a3, std::int64_t a4,
                     std::int64_t a6, std::int64_t q) {
    std::int64_t aq = ftv::count_points_weight2({a1, a2, a3, a4, a6}, q);
    std::cout << "a_" << q << " = " << aq << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"functional-equation verifier for modular forms over false-Tate towers"};
    app.require_subcommand(0, 1);

    // top-level verify flags
    std::string form_path, report_path, format = "json", twist = "paper-display";
    std::int64_t a = 0, p = 0;
    int level = 1, precision = 40;
    bool serial = false;
    app.add_option("--form", form_path, "form data JSON file");
    app.add_option("--a", a, "Kummer base");
    app.add_option("--p", p, "working prime (odd)");
    app.add_option("--level", level, "finite level n");
    app.add_option("--precision", precision, "absolute p-adic digits (default 40)");
    app.add_option("--twist-convention", twist, "paper-display | paper-text");
    app.add_option("--report", report_path, "report output path (default stdout)");
    app.add_option("--format", format, "json | text");
    app.add_flag("--serial", serial, "use the serial reference kernel");

    RepFlags rf;

    CLI::App* lemma = app.add_subcommand("lemma-check", "closed form vs oracle determinant");
    std::int64_t lq = 2, lx = 2, lp = 3;
    int ln = 1, lprec = 40;
    RepFlags lrf;
    lemma->add_option("--p", lp, "prime")->required();
    lemma->add_option("--n", ln, "level")->required();
    lemma->add_option("--q", lq, "local prime q != p")->required();
    lemma->add_option("--x", lx, "Frobenius eigenvalue on the coefficient line");
    lemma->add_option("--precision", lprec, "digits");
    add_rep_flags(lemma, lrf);

    CLI::App* euler = app.add_subcommand("euler", "Euler factors for eta and eta*");
    std::string eform;
    std::int64_t ep = 0, eq = 0;
    int en = 1, eprec = 40;
    RepFlags erf;
    euler->add_option("--form", eform, "form data JSON file")->required();
    euler->add_option("--p", ep, "working prime")->required();
    euler->add_option("--level", en, "finite level n");
    euler->add_option("--q", eq, "local prime")->required();
    euler->add_option("--precision", eprec, "digits");
    add_rep_flags(euler, erf);

    CLI::App* classify = app.add_subcommand("classify", "P0/P1/P2 classification with evidence");
    std::string cform, ctwist = "paper-display";
    std::int64_t ca = 0, cp = 0;
    int clevel = 1, cprec = 40;
    classify->add_option("--form", cform, "form data JSON file")->required();
    classify->add_option("--a", ca, "Kummer base")->required();
    classify->add_option("--p", cp, "working prime")->required();
    classify->add_option("--level", clevel, "finite level n");
    classify->add_option("--precision", cprec, "digits");
    classify->add_option("--twist-convention", ctwist, "paper-display | paper-text");

    CLI::App* evalc = app.add_subcommand("eval-charelem", "evaluate one local module");
    std::string kind = "N";
    std::int64_t vp = 0, vq = 0, vx = 2;
    int vn = 1, vprec = 40;
    RepFlags vrf;
    evalc->add_option("--p", vp, "prime")->required();
    evalc->add_option("--n", vn, "level")->required();
    evalc->add_option("--q", vq, "local prime")->required();
    evalc->add_option("--kind", kind, "N | M");
    evalc->add_option("--x", vx, "Frobenius eigenvalue (rank 1)");
    evalc->add_option("--precision", vprec, "digits");
    add_rep_flags(evalc, vrf);

    CLI::App* irr = app.add_subcommand("irreps", "list the irreducible representations");
    std::int64_t ip = 0;
    int in_ = 1, iprec = 40;
    irr->add_option("--p", ip, "prime")->required();
    irr->add_option("--level", in_, "finite level n");
    irr->add_option("--precision", iprec, "digits");

    CLI::App* cnt = app.add_subcommand("count-points", "a_q by exhaustive point counting");
    std::int64_t w1 = 0, w2 = 0, w3 = 0, w4 = 0, w6 = 0, cq = 0;
    cnt->add_option("--a1", w1, "Weierstrass a1");
    cnt->add_option("--a2", w2, "Weierstrass a2");
    cnt->add_option("--a3", w3, "Weierstrass a3");
    cnt->add_option("--a4", w4, "Weierstrass a4");
    cnt->add_option("--a6", w6, "Weierstrass a6");
    cnt->add_option("--q", cq, "prime of good reduction")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (lemma->parsed()) return run_lemma_check(lp, ln, lq, lx, lrf, lprec);
        if (euler->parsed()) return run_euler(eform, ep, en, eq, erf, eprec);
        if (classify->parsed()) return run_classify(cform, ca, cp, clevel, cprec, ctwist);
        if (evalc->parsed()) return run_eval_charelem(vp, vn, vq, kind, vx, vrf, vprec);
        if (irr->parsed()) return run_irreps(ip, in_, iprec);
        if (cnt->parsed()) return run_count_points(w1, w2, w3, w4, w6, cq);
        if (form_path.empty() || a == 0 || p == 0) {
            std::cerr << app.help();
            return 3;
        }
        return run_verify(form_path, a, p, level, precision, twist, report_path, format, serial);
    } catch (const ftv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return ftv::exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
