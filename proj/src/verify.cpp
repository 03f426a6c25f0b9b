#include "ftv/verify.hpp"

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace ftv {

using ordered_json = nlohmann::ordered_json;

const char* twist_name(TwistConvention t) {
    return t == TwistConvention::PaperDisplay ? "paper-display" : "paper-text";
}

ValueRecord value_record(const CycElem& v) {
    ValueRecord r;
    r.value = v.str();
    r.valuation = v.valuation().str();
    r.level = v.level();
    r.precision = v.precision();
    return r;
}

ValueRecord indeterminate_record() {
    ValueRecord r;
    r.value = "indeterminate";
    r.valuation = "+inf";
    return r;
}

namespace {

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

RepRecord evaluate_one(const FormData& form, const ErrorTermClass& error_term,
                       const std::vector<std::int64_t>& p0, const ArtinRep& rep) {
    RepRecord rec;
    rec.label = rep.name();
    rec.dimension = rep.dim();
    rec.status = "ok";

    // algebraic side: product over the exceptional-divisor summands
    bool lhs_indeterminate = false;
    CycElem lhs = CycElem::one(rep.prime(), rep.level(), rep.prec());
    Rat lhs_val(0);
    for (const ErrorSummand& s : error_term.summands) {
        EvalResult e = local_error_eval(s, rep);
        for (const auto& c : e.cancelled_factors)
            rec.notes.push_back("q=" + std::to_string(s.dd.q) + ": cancelled " + c);
        if (e.indeterminate) {
            lhs_indeterminate = true;
            rec.notes.push_back("q=" + std::to_string(s.dd.q) + ": indeterminate evaluation");
            break;
        }
        lhs = lhs * e.value;
        lhs_val = lhs_val + e.valuation;
    }

    // analytic side: Euler-factor ratio over all of P_0
    CycElem rhs = euler_ratio_product(form, rep, p0);

    rec.rhs = value_record(rhs);
    if (lhs_indeterminate) {
        rec.lhs = indeterminate_record();
        rec.status = "indeterminate";
        rec.unit_ratio_ok = false;
        return rec;
    }
    rec.lhs = value_record(lhs);
    rec.lhs.valuation = lhs_val.str();

    if (rhs.is_zero()) {
        rec.notes.push_back("analytic ratio vanishes at the tracked precision");
        rec.unit_ratio_ok = false;
        return rec;
    }
    Rat rhs_val = rhs.valuation();
    CycElem ratio = lhs * rhs.invert();
    Rat ratio_val = ratio.valuation();
    rec.unit_ratio_ok = (lhs_val == rhs_val) && (ratio_val == Rat(0));
    rec.ratio_exactly_one = ratio == CycElem::one(rep.prime(), rep.level(), rep.prec());
    return rec;
}

}  // namespace

VerificationReport verify_functional_equation(const FormData& form, const VerifyOptions& opts) {
    if (!is_prime_i64(opts.p) || opts.p == 2)
        throw SchemaViolation("working prime must be an odd prime");
    if (form.level_N % opts.p == 0)
        throw SchemaViolation("the working prime must not divide the level");
    if (opts.level < 1) throw SchemaViolation("finite level must be >= 1");
    if (opts.level > 12) throw SchemaViolation("finite level too large; desk scale is n <= 12");
    if (opts.precision < 4) throw SchemaViolation("precision below the supported minimum");

    VerificationReport rep;
    rep.form_label = form.label;
    rep.p = opts.p;
    rep.a = opts.a;
    rep.level = opts.level;
    rep.precision = opts.precision;
    rep.twist_convention = twist_name(opts.twist);
    rep.assumptions = {
        "a_p(f) is a p-adic unit (ordinarity declared, not checked; a_p is never used)",
        "the Selmer-theoretic hypotheses behind the functional equation are declared inputs,"
        " never checked here",
        "p-local Euler data (P_p, epsilon_p, alpha_p) enters only through the closed results:"
        " trivial for non-trivial representations, identical for eta and eta* at the trivial one",
    };

    PrimeClassification cls =
        classify_primes(form, opts.a, opts.p, opts.level, opts.precision, opts.twist);
    if (form.classification_override)
        cls = apply_override(std::move(cls), *form.classification_override);
    rep.classification = cls;

    // fail fast on missing local data for the analytic side
    for (std::int64_t q : cls.P0) {
        if (form.is_special(q))
            form.delta(q);
        else
            form.coefficient(q);
    }

    ErrorTermClass error_term =
        assemble_error_term(cls, form, opts.p, opts.level, opts.precision, opts.twist);
    std::vector<ArtinRep> irreps = enumerate_irreps(opts.p, opts.level, opts.precision);

    rep.records.resize(irreps.size());
    std::vector<std::pair<int, std::string>> errors(irreps.size(), {-1, ""});
    bool parallel = opts.exec == Exec::Parallel;
    (void)parallel;
#ifdef FTV_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (std::size_t i = 0; i < irreps.size(); ++i) {
        try {
            rep.records[i] = evaluate_one(form, error_term, cls.P0, irreps[i]);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Precision) {
                RepRecord r;
                r.label = irreps[i].name();
                r.dimension = irreps[i].dim();
                r.status = "precision";
                r.lhs = indeterminate_record();
                r.rhs = indeterminate_record();
                r.notes.push_back(std::string("precision exhausted: ") + e.what() +
                                  "; rerun with a higher --precision");
                rep.records[i] = std::move(r);
            } else {
                errors[i] = {static_cast<int>(e.kind()), e.what()};
            }
        }
    }
    for (const auto& [kind, msg] : errors)
        if (kind >= 0) throw Error(static_cast<ErrorKind>(kind), msg);

    for (const auto& r : rep.records) {
        if (r.status == "precision")
            ++rep.precision_failures;
        else if (r.status == "indeterminate")
            ++rep.indeterminate;
        else if (r.unit_ratio_ok)
            ++rep.passed;
        else
            ++rep.failed;
    }
    rep.pass = rep.failed == 0 && rep.indeterminate == 0 && rep.precision_failures == 0;
    return rep;
}

int report_exit_code(const VerificationReport& r) {
    if (r.precision_failures > 0) return 2;
    return r.pass ? 0 : 1;
}

namespace {
ordered_json value_json(const ValueRecord& v) {
    ordered_json j;
    j["value"] = v.value;
    j["valuation"] = v.valuation;
    j["level"] = v.level;
    j["precision"] = v.precision;
    return j;
}
}  // namespace

std::string report_json(const VerificationReport& r) {
    ordered_json j;
    ordered_json params;
    params["form"] = r.form_label;
    params["p"] = r.p;
    params["a"] = r.a;
    params["level"] = r.level;
    params["precision"] = r.precision;
    params["twist_convention"] = r.twist_convention;
    j["header"]["parameters"] = params;
    j["header"]["assumptions"] = r.assumptions;

    ordered_json cls;
    cls["P0"] = r.classification.P0;
    cls["P1"] = r.classification.P1;
    cls["P2"] = r.classification.P2;
    ordered_json ev = ordered_json::array();
    for (const auto& e : r.classification.evidence) {
        ordered_json one;
        one["q"] = e.q;
        one["class"] = e.cls;
        one["reason"] = e.reason;
        ev.push_back(one);
    }
    cls["evidence"] = ev;
    cls["overridden"] = r.classification.overridden;
    cls["warnings"] = r.classification.warnings;
    j["header"]["classification"] = cls;

    ordered_json body = ordered_json::array();
    for (const auto& rec : r.records) {
        ordered_json one;
        one["label"] = rec.label;
        one["dimension"] = rec.dimension;
        one["lhs"] = value_json(rec.lhs);
        one["rhs"] = value_json(rec.rhs);
        one["unit_ratio_ok"] = rec.unit_ratio_ok;
        one["ratio_exactly_one"] = rec.ratio_exactly_one;
        one["status"] = rec.status;
        one["notes"] = rec.notes;
        body.push_back(one);
    }
    j["body"] = body;

    ordered_json summary;
    summary["pass"] = r.pass;
    summary["total"] = r.records.size();
    summary["passed"] = r.passed;
    summary["failed"] = r.failed;
    summary["indeterminate"] = r.indeterminate;
    summary["precision_failures"] = r.precision_failures;
    j["summary"] = summary;
    return j.dump(2) + "\n";
}

std::string report_text(const VerificationReport& r) {
    std::ostringstream os;
    os << "functional-equation check: form " << r.form_label << ", p = " << r.p << ", a = " << r.a
       << ", level n = " << r.level << ", precision " << r.precision << " digits, twist "
       << r.twist_convention << "\n";
    os << "classification: P0 = {";
    for (std::size_t i = 0; i < r.classification.P0.size(); ++i)
        os << (i ? "," : "") << r.classification.P0[i];
    os << "}, P1 = {";
    for (std::size_t i = 0; i < r.classification.P1.size(); ++i)
        os << (i ? "," : "") << r.classification.P1[i];
    os << "}, P2 = {";
    for (std::size_t i = 0; i < r.classification.P2.size(); ++i)
        os << (i ? "," : "") << r.classification.P2[i];
    os << "}" << (r.classification.overridden ? " (override)" : "") << "\n";
    for (const auto& w : r.classification.warnings) os << "warning: " << w << "\n";
    for (const auto& rec : r.records) {
        os << (rec.unit_ratio_ok ? "  ok   " : "  FAIL ") << rec.label << " (dim " << rec.dimension
           << "): v(lhs) = " << rec.lhs.valuation << ", v(rhs) = " << rec.rhs.valuation;
        if (rec.ratio_exactly_one) os << ", ratio = 1 exactly";
        if (rec.status != "ok") os << " [" << rec.status << "]";
        os << "\n";
        for (const auto& n : rec.notes) os << "         note: " << n << "\n";
    }
    os << (r.pass ? "PASS" : "FAIL") << " (" << r.passed << " passed, " << r.failed << " failed, "
       << r.indeterminate << " indeterminate, " << r.precision_failures << " precision)"
       << "\n";
    return os.str();
}

void emit_report(const VerificationReport& r, const std::string& format, const std::string& path) {
    std::string out = format == "text" ? report_text(r) : report_json(r);
    if (path.empty() || path == "-") {
        std::cout << out;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IOError("cannot open report path " + path);
    f << out;
    if (!f) throw IOError("failed writing report to " + path);
}

FormData parse_form_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    FormData f;
    try {
        if (!j.is_object()) throw SchemaViolation("top level must be an object");
        f.label = j.value("label", std::string{});
        if (!j.contains("weight") || !j["weight"].is_number_integer())
            throw SchemaViolation("weight must be an integer");
        f.weight = j["weight"].get<int>();
        if (!j.contains("level") || !j["level"].is_number_integer())
            throw SchemaViolation("level must be an integer");
        f.level_N = j["level"].get<std::int64_t>();
        if (j.contains("coefficients")) {
            if (!j["coefficients"].is_object()) throw SchemaViolation("coefficients must be an object");
            for (auto it = j["coefficients"].begin(); it != j["coefficients"].end(); ++it) {
                std::int64_t q = std::stoll(it.key());
                if (!is_prime_i64(q)) throw SchemaViolation("coefficient key is not prime: " + it.key());
                if (!it.value().is_number_integer())
                    throw SchemaViolation("coefficient a_" + it.key() + " must be an integer");
                f.coefficients[q] = it.value().get<std::int64_t>();
            }
        }
        if (j.contains("special")) {
            if (!j["special"].is_object()) throw SchemaViolation("special must be an object");
            for (auto it = j["special"].begin(); it != j["special"].end(); ++it) {
                std::int64_t q = std::stoll(it.key());
                if (!it.value().is_object() || !it.value().contains("delta"))
                    throw SchemaViolation("special entry needs a delta field");
                f.special[q] = it.value()["delta"].get<int>();
            }
        }
        if (j.contains("classification_override")) {
            const auto& ov = j["classification_override"];
            ClassificationOverride o;
            if (ov.contains("P1")) o.P1 = ov["P1"].get<std::vector<std::int64_t>>();
            if (ov.contains("P2")) o.P2 = ov["P2"].get<std::vector<std::int64_t>>();
            f.classification_override = std::move(o);
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaViolation(std::string("malformed form data: ") + e.what());
    }
    validate_form(f);
    return f;
}

FormData ingest_form(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open form file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_form_json(ss.str());
}

}  // namespace ftv
