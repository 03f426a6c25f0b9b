#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftv/cyclotomic.hpp"
#include "ftv/reps.hpp"

namespace ftv {

struct ClassificationOverride {
    std::vector<std::int64_t> P1;
    std::vector<std::int64_t> P2;
};

// Local data of the modular form: even weight k, square-free level N with
// trivial nebentypus, integer Hecke eigenvalues a_q, and the quadratic
// character delta_q = a_q / q^(k/2-1) at the special primes q | N.
struct FormData {
    std::string label;
    int weight = 2;
    std::int64_t level_N = 1;
    std::map<std::int64_t, std::int64_t> coefficients;  // q -> a_q
    std::map<std::int64_t, int> special;                // q | N -> delta in {+1,-1}
    std::optional<ClassificationOverride> classification_override;

    bool is_special(std::int64_t q) const { return level_N % q == 0; }
    std::int64_t coefficient(std::int64_t q) const;  // MissingCoefficient if absent
    int delta(std::int64_t q) const;                 // MissingCoefficient if absent
};

// Validates the FormData invariants (k even, N square-free, special primes
// consistent: a_q = delta_q q^(k/2-1)); fills a_q from delta when absent.
void validate_form(FormData& f);

// (s, t) = (a_q q^(1-k/2), q): sum and product of the twisted roots
// alpha_q, beta_q; everything stays in Z_p, no root extraction.
std::pair<PadicScalar, PadicScalar> twisted_frobenius_data(const FormData& f, std::int64_t q,
                                                           std::int64_t p, int prec);

struct EulerFactorValue {
    CycElem value;
    int degree = 0;  // 2 good / 1 special / 0 when inertia invariants vanish
};

// P_q(f, eta, q^{-k/2}) evaluated directly at the displayed argument shapes:
//   theta-type (inertia invariants 0): 1
//   psi, q good:     1 - s psi(F) q^{-1} + t psi(F)^2 q^{-2}
//   psi, q special:  1 - delta_q psi(F) q^{-1}
EulerFactorValue euler_factor(const FormData& f, const ArtinRep& rep, std::int64_t q);

// prod over the given primes of P_q(f, eta, .) / P_q(f, eta*, .).
CycElem euler_ratio_product(const FormData& f, const ArtinRep& rep,
                            const std::vector<std::int64_t>& primes);

}  // namespace ftv
