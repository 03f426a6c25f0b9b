#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sys/wait.h>

#include "ftv/verify.hpp"

using ftv::FormData;
using ftv::VerificationReport;
using ftv::VerifyOptions;

namespace {
std::string fixture(const std::string& name) { return std::string(FTV_FIXTURE_DIR) + "/" + name; }

VerifyOptions options(std::int64_t p, std::int64_t a, int level) {
    VerifyOptions o;
    o.p = p;
    o.a = a;
    o.level = level;
    return o;
}
}  // namespace

TEST_CASE("form ingestion") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    CHECK(f.label == "11a");
    CHECK(f.weight == 2);
    CHECK(f.level_N == 11);
    CHECK(f.coefficient(2) == -2);
    CHECK(f.coefficient(11) == 1);  // derived from delta
    CHECK(f.delta(11) == 1);

    CHECK_THROWS_AS(ftv::ingest_form(fixture("no_such_file.json")), ftv::IOError);
    CHECK_THROWS_AS(ftv::parse_form_json("not json at all"), ftv::ParseError);
    CHECK_THROWS_AS(ftv::parse_form_json(R"({"weight": 3, "level": 11})"),
                    ftv::SchemaViolation);
    CHECK_THROWS_AS(ftv::parse_form_json(R"({"weight": 2, "level": 12})"),
                    ftv::SchemaViolation);
    CHECK_THROWS_AS(ftv::parse_form_json(
                        R"({"weight": 2, "level": 11,
                            "coefficients": {"11": 3},
                            "special": {"11": {"delta": 1}}})"),
                    ftv::InconsistentSpecialData);
}

TEST_CASE("empty exceptional divisor gives the exact trivial identity") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    VerificationReport r = ftv::verify_functional_equation(f, options(5, 1, 1));
    CHECK(r.pass);
    CHECK(ftv::report_exit_code(r) == 0);
    for (const auto& rec : r.records) {
        CHECK(rec.unit_ratio_ok);
        CHECK(rec.ratio_exactly_one);
        CHECK(rec.lhs.value == "1");
        CHECK(rec.rhs.value == "1");
    }
}

TEST_CASE("headline fixture passes at level 1") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    VerificationReport r = ftv::verify_functional_equation(f, options(5, 11, 1));
    CHECK(r.pass);
    CHECK(r.records.size() == 5);
    bool saw_cancellation = false;
    for (const auto& rec : r.records)
        for (const auto& n : rec.notes) saw_cancellation = saw_cancellation || n.find("cancelled") != std::string::npos;
    CHECK(saw_cancellation);
}

TEST_CASE("reports are deterministic and kernel-independent") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    VerifyOptions serial = options(5, 22, 1);
    serial.exec = ftv::Exec::Serial;
    VerifyOptions parallel = options(5, 22, 1);
    parallel.exec = ftv::Exec::Parallel;
    std::string a = ftv::report_json(ftv::verify_functional_equation(f, serial));
    std::string b = ftv::report_json(ftv::verify_functional_equation(f, serial));
    std::string c = ftv::report_json(ftv::verify_functional_equation(f, parallel));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("twist convention paper-text fails the identity") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    VerifyOptions o = options(5, 22, 1);
    o.twist = ftv::TwistConvention::PaperText;
    VerificationReport r = ftv::verify_functional_equation(f, o);
    CHECK(!r.pass);
    CHECK(r.failed > 0);
    CHECK(ftv::report_exit_code(r) == 1);
}

TEST_CASE("lhs and rhs are stable under level inflation") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    VerificationReport r1 = ftv::verify_functional_equation(f, options(5, 22, 1));
    VerificationReport r2 = ftv::verify_functional_equation(f, options(5, 22, 2));
    REQUIRE(r1.pass);
    REQUIRE(r2.pass);
    // every level-1 record appears at level 2 with the same label and
    // valuations (the inflated representation evaluates identically)
    for (const auto& rec1 : r1.records) {
        bool found = false;
        for (const auto& rec2 : r2.records) {
            if (rec2.label != rec1.label) continue;
            found = true;
            CHECK(rec2.lhs.valuation == rec1.lhs.valuation);
            CHECK(rec2.rhs.valuation == rec1.rhs.valuation);
        }
        CHECK(found);
    }
}

TEST_CASE("inflated representations evaluate to the same values") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    const std::int64_t p = 5;
    auto cls1 = ftv::classify_primes(f, 22, p, 1, 40, ftv::TwistConvention::PaperDisplay);
    auto et1 = ftv::assemble_error_term(cls1, f, p, 1, 40, ftv::TwistConvention::PaperDisplay);
    auto cls2 = ftv::classify_primes(f, 22, p, 2, 40, ftv::TwistConvention::PaperDisplay);
    auto et2 = ftv::assemble_error_term(cls2, f, p, 2, 40, ftv::TwistConvention::PaperDisplay);
    for (const ftv::ArtinRep& rep : ftv::enumerate_irreps(p, 1, 40)) {
        ftv::ArtinRep up = ftv::inflate_rep(rep);
        ftv::CycElem low = ftv::CycElem::one(p, 1, 40);
        ftv::CycElem high = ftv::CycElem::one(p, 2, 40);
        for (std::size_t i = 0; i < et1.summands.size(); ++i) {
            auto e1 = ftv::local_error_eval(et1.summands[i], rep);
            auto e2 = ftv::local_error_eval(et2.summands[i], up);
            REQUIRE(!e1.indeterminate);
            REQUIRE(!e2.indeterminate);
            low = low * e1.value;
            high = high * e2.value;
        }
        CHECK(low.embed(2) == high);  // same element of the bigger field
        // analytic side too
        ftv::CycElem rhs1 = ftv::euler_ratio_product(f, rep, cls1.P0);
        ftv::CycElem rhs2 = ftv::euler_ratio_product(f, up, cls2.P0);
        CHECK(rhs1.embed(2) == rhs2);
    }
}

TEST_CASE("classification override flows into the report") {
    std::string text = R"({
        "label": "11a-override", "weight": 2, "level": 11,
        "coefficients": {"2": -2},
        "special": {"11": {"delta": 1}},
        "classification_override": {"P1": [], "P2": []}
    })";
    FormData f = ftv::parse_form_json(text);
    VerificationReport r = ftv::verify_functional_equation(f, options(5, 11, 1));
    CHECK(r.classification.overridden);
    CHECK(!r.classification.warnings.empty());
    CHECK(r.classification.P1.empty());
    CHECK(r.pass);  // empty error term, unit analytic ratios
}

TEST_CASE("emit_report writes files") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    VerificationReport r = ftv::verify_functional_equation(f, options(5, 11, 1));
    std::string path = "verify_test_report.json";
    ftv::emit_report(r, "json", path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first == "{");
    in.close();
    std::remove(path.c_str());
    CHECK_THROWS_AS(ftv::emit_report(r, "json", "/nonexistent-dir/x.json"), ftv::IOError);
}

TEST_CASE("input validation errors") {
    FormData f = ftv::ingest_form(fixture("form_11a.json"));
    CHECK_THROWS_AS(ftv::verify_functional_equation(f, options(11, 11, 1)),
                    ftv::SchemaViolation);  // p | N
    CHECK_THROWS_AS(ftv::verify_functional_equation(f, options(4, 11, 1)),
                    ftv::SchemaViolation);  // p not prime
    // missing coefficient for a good prime in P0
    FormData g = f;
    g.coefficients.erase(3);
    CHECK_THROWS_AS(ftv::verify_functional_equation(g, options(5, 33, 1)),
                    ftv::MissingCoefficient);
}

TEST_CASE("exit code contract") {
    VerificationReport r;
    r.pass = true;
    CHECK(ftv::report_exit_code(r) == 0);
    r.pass = false;
    r.failed = 1;
    CHECK(ftv::report_exit_code(r) == 1);
    r.precision_failures = 1;
    CHECK(ftv::report_exit_code(r) == 2);
    CHECK(ftv::exit_code_for(ftv::ErrorKind::Input) == 3);
    CHECK(ftv::exit_code_for(ftv::ErrorKind::Precision) == 2);
}

TEST_CASE("cli end to end") {
#ifdef FTV_CLI_PATH
    std::string cli = FTV_CLI_PATH;
    std::string base = cli + " --form " + fixture("form_11a.json");
    CHECK(std::system((base + " --a 11 --p 5 --level 1 --report cli_test_out.json").c_str()) == 0);
    std::remove("cli_test_out.json");
    // identity failure -> exit 1
    int rc = std::system(
        (base + " --a 22 --p 5 --level 1 --twist-convention paper-text --report cli_test_out2.json")
            .c_str());
    CHECK(WEXITSTATUS(rc) == 1);
    std::remove("cli_test_out2.json");
    // input failure -> exit 3
    int rc3 = std::system((cli + " --form does_not_exist.json --a 11 --p 5 --level 1 2>/dev/null").c_str());
    CHECK(WEXITSTATUS(rc3) == 3);
    // subcommands
    CHECK(std::system((cli + " lemma-check --p 3 --n 1 --q 2 --x 2 > /dev/null").c_str()) == 0);
    CHECK(std::system((cli + " lemma-check --p 3 --n 1 --q 2 --x 2 --theta 1 > /dev/null").c_str()) == 0);
    CHECK(std::system((cli + " irreps --p 5 --level 1 > /dev/null").c_str()) == 0);
    CHECK(std::system(
              (cli + " classify --form " + fixture("form_11a.json") + " --a 22 --p 5 > /dev/null").c_str()) == 0);
    CHECK(std::system(
              (cli + " euler --form " + fixture("form_11a.json") + " --p 5 --q 11 --tame 1 > /dev/null").c_str()) ==
          0);
    CHECK(std::system(
              (cli + " eval-charelem --p 5 --n 1 --q 2 --kind M --x 3 > /dev/null").c_str()) == 0);
    CHECK(std::system(
              (cli + " count-points --a2 -1 --a3 1 --a4 -10 --a6 -20 --q 7 > /dev/null").c_str()) == 0);
#endif
}
