#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftv/padic.hpp"

namespace ftv {

// Element of Q_p(zeta_{p^m}) in the power basis 1, z, ..., z^(phi(p^m)-1)
// modulo Phi_{p^m}(X) = sum_{i<p} X^(i*p^(m-1)).  Level 0 is Q_p itself.
// Elements embed losslessly into higher levels via z_{p^m} = z_{p^m'}^(p^(m'-m)).
class CycElem {
public:
    CycElem() = default;

    static std::int64_t phi(std::int64_t p, int m);

    static CycElem zero(std::int64_t p, int m, int prec);
    static CycElem one(std::int64_t p, int m, int prec);
    static CycElem from_integer(std::int64_t p, int m, int prec, std::int64_t v);
    static CycElem from_scalar(const PadicScalar& s, int m = 0);
    // zeta_{p^m}^k, k taken mod p^m
    static CycElem zeta_pow(std::int64_t p, int m, int prec, std::int64_t k);

    std::int64_t prime() const { return p_; }
    int level() const { return level_; }
    int size() const { return static_cast<int>(c_.size()); }
    const PadicScalar& coeff(int i) const { return c_[i]; }

    // min absolute precision over coefficients
    int precision() const;

    bool is_zero() const;
    bool operator==(const CycElem& o) const;
    bool operator!=(const CycElem& o) const { return !(*this == o); }

    CycElem operator+(const CycElem& o) const;
    CycElem operator-(const CycElem& o) const;
    CycElem operator*(const CycElem& o) const;
    CycElem operator-() const;
    CycElem scaled(const PadicScalar& s) const;
    CycElem invert() const;
    CycElem pow(std::int64_t k) const;

    CycElem embed(int higher_level) const;

    // Field valuation normalized so valuation(p) = 1, computed as
    // v_p(Res(Phi_{p^m}, a)) / phi(p^m) on a p-integral rescaling.
    // Returns +inf when the element is 0 at the tracked precision; throws
    // PrecisionExhausted when the resultant vanishes at the tracked precision
    // for an element that does not.
    Rat valuation() const;

    // Lower bound for the valuation: min over coefficient valuations (exact
    // for the pivoting heuristics, cheap).
    Rat coeff_min_valuation() const;

    std::string str() const;

private:
    std::int64_t p_ = 0;
    int level_ = 0;
    std::vector<PadicScalar> c_;

    static void align(CycElem& a, CycElem& b);
    void reduce_raw(std::vector<PadicScalar>& raw) const;
};

}  // namespace ftv
