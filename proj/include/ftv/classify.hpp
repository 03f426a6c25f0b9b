#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ftv/charelem.hpp"
#include "ftv/euler.hpp"

namespace ftv {

struct PrimeEvidence {
    std::int64_t q = 0;
    std::string cls;  // "P1", "P2", "P0"
    std::string reason;
};

struct PrimeClassification {
    std::int64_t a = 0;
    std::vector<std::int64_t> P0, P1, P2;
    std::vector<PrimeEvidence> evidence;
    bool overridden = false;
    std::vector<std::string> warnings;
};

// Classify the primes dividing the Kummer base a:
//   P1 (q | N):  delta_q^f = 1 with f the order of q mod p (delta trivial on
//                the unramified mu_p-extension),
//   P2 (q good): the twisted Frobenius matrix has a fixed point on the
//                divisible module, i.e. v_p(det(X^(f_q p^J) - 1)) > 0 at
//                stabilized J.
PrimeClassification classify_primes(const FormData& f, std::int64_t a, std::int64_t p, int level,
                                    int prec, TwistConvention twist);

// Apply a supplied override (classification is per-prime conditional; a
// disagreement with the computed classes is logged, not fatal).
PrimeClassification apply_override(PrimeClassification computed, const ClassificationOverride& ov);

struct ErrorTermClass {
    std::vector<ErrorSummand> summands;  // ascending q, one per prime in P1 u P2
};

ErrorTermClass assemble_error_term(const PrimeClassification& cls, const FormData& f,
                                   std::int64_t p, int level, int prec, TwistConvention twist);

// Frobenius matrix on the rank-2 twisted module at a good prime q.
Matrix<PadicScalar> twisted_module_matrix(const FormData& f, std::int64_t q, std::int64_t p,
                                          int prec, TwistConvention twist);

// a_q = q + 1 - #E(F_q) by exhaustive counting on a long Weierstrass model
// [a1, a2, a3, a4, a6]; BadReduction at primes dividing the discriminant.
std::int64_t count_points_weight2(const std::array<std::int64_t, 5>& w, std::int64_t q);

std::vector<std::int64_t> prime_factors(std::int64_t n);

}  // namespace ftv
