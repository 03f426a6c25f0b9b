#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "ftv/errors.hpp"
#include "ftv/rational.hpp"

namespace ftv {

// Scalar of Q_p with tracked precision: value = residue * p^(-denom_exp),
// residue kept reduced mod p^prec_digits.  Absolute precision is
// prec_digits - denom_exp and every operation keeps it honest: a result whose
// tracked precision would drop to zero throws PrecisionExhausted instead of
// returning digits it cannot certify.
//
// Residues are stored in base p^K (K the largest power with p^K < 2^31), so
// reduction mod p^N is limb truncation and no general bignum division is ever
// needed.
class PadicScalar {
public:
    static constexpr int kMaxLimbs = 24;

    PadicScalar() = default;

    static PadicScalar from_integer(std::int64_t p, int prec_digits, std::int64_t value);
    static PadicScalar from_ratio(std::int64_t p, int prec_digits, std::int64_t num,
                                  std::int64_t den);
    static PadicScalar zero(std::int64_t p, int prec_digits);
    static PadicScalar one(std::int64_t p, int prec_digits);

    // Teichmueller lift: the (p-1)-st root of unity congruent to u mod p,
    // computed by iterating x -> x^p to its fixed point.
    static PadicScalar teichmuller(std::int64_t p, int prec_digits, std::int64_t u);

    std::int64_t prime() const { return p_; }
    int prec_digits() const { return prec_; }
    int denom_exp() const { return denom_exp_; }
    int abs_precision() const { return prec_ - denom_exp_; }

    bool is_zero() const;  // zero at the tracked precision
    Rat valuation() const;

    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator-() const;
    PadicScalar invert() const;
    PadicScalar pow(std::int64_t k) const;

    // Multiplies by p^t (t may be negative); exact, adjusts denom_exp.
    PadicScalar shift_p(int t) const;

    // Value equality at the shared precision.
    bool operator==(const PadicScalar& o) const;
    bool operator!=(const PadicScalar& o) const { return !(*this == o); }

    // Residue of the value mod p (requires denom_exp == 0 after normalization).
    std::int64_t residue_mod_p() const;

    // Residue of the value mod p^k for small k (p^k < 2^62, denom_exp == 0).
    std::int64_t residue_mod_pk(int k) const;

    // Canonical serialization: decimal residue, "*p^-e" suffix when e > 0.
    std::string str() const;

    // Max digits supported for this prime given the fixed limb capacity.
    static int max_digits(std::int64_t p);

private:
    struct Limbs {
        std::array<std::uint32_t, kMaxLimbs> d{};
        int n = 0;  // active limbs
    };

    std::int64_t p_ = 0;
    int k_ = 0;          // digits per limb
    std::uint64_t base_ = 0;  // p^k_
    int prec_ = 0;       // N
    int denom_exp_ = 0;  // e
    Limbs r_;

    void init_shape(std::int64_t p, int prec_digits);
    void normalize();
    void reduce_to(int new_prec);

    static int limbs_for(int digits, int k) { return (digits + k - 1) / k; }

    // raw limb helpers (all reduced mod p^prec of *this)
    void raw_set_u64(std::uint64_t v);
    void raw_mask_top();
    bool raw_is_zero() const;
    int raw_val_p() const;  // requires nonzero
    void raw_div_p();
    void raw_mul_p(int times);
    static Limbs raw_add(const PadicScalar& a, const PadicScalar& b, int prec);
    static Limbs raw_sub(const PadicScalar& a, const PadicScalar& b, int prec);
    static Limbs raw_mul(const PadicScalar& a, const PadicScalar& b, int prec);
    PadicScalar with_limbs(Limbs l, int prec, int denom) const;

    friend struct PadicScalarTestAccess;
};

}  // namespace ftv
