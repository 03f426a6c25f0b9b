#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftv/classify.hpp"
#include "ftv/parallel.hpp"

namespace ftv {

struct VerifyOptions {
    std::int64_t p = 0;
    std::int64_t a = 0;
    int level = 1;
    int precision = 40;
    TwistConvention twist = TwistConvention::PaperDisplay;
    Exec exec = Exec::Parallel;
};

struct ValueRecord {
    std::string value;      // canonical polynomial string, or "indeterminate"
    std::string valuation;  // reduced fraction, or "+inf"
    int level = 0;
    int precision = 0;
};

struct RepRecord {
    std::string label;
    int dimension = 0;
    ValueRecord lhs;  // algebraic: evaluation of the exceptional divisor
    ValueRecord rhs;  // analytic: Euler-factor ratio product
    bool unit_ratio_ok = false;
    bool ratio_exactly_one = false;
    std::string status;  // "ok" | "indeterminate" | "precision"
    std::vector<std::string> notes;
};

struct VerificationReport {
    // header
    std::string form_label;
    std::int64_t p = 0, a = 0;
    int level = 0, precision = 0;
    std::string twist_convention;
    std::vector<std::string> assumptions;
    PrimeClassification classification;
    // body
    std::vector<RepRecord> records;
    // summary
    bool pass = false;
    int passed = 0, failed = 0, indeterminate = 0, precision_failures = 0;
};

VerificationReport verify_functional_equation(const FormData& form, const VerifyOptions& opts);

std::string report_json(const VerificationReport& r);
std::string report_text(const VerificationReport& r);
int report_exit_code(const VerificationReport& r);

// path "" or "-" writes to stdout
void emit_report(const VerificationReport& r, const std::string& format, const std::string& path);

FormData ingest_form(const std::string& path);
FormData parse_form_json(const std::string& text);

ValueRecord value_record(const CycElem& v);
ValueRecord indeterminate_record();

const char* twist_name(TwistConvention t);

}  // namespace ftv
