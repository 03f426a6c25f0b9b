#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftv/group.hpp"
#include "ftv/linalg.hpp"
#include "ftv/reps.hpp"

namespace ftv {

// The two local modules of the exact sequence at q: N is the cyclic module
// annihilated by Frob - X, M its (h-1)-submodule annihilated by
// Frob - S_q X with S_q = 1 + h + ... + h^(q-1).
enum class ModuleKind { N, M };

// Two circulating normalizations of the rank-2 twisted module differ by a
// q-scaling of the Frobenius eigenvalue pair, and only one of them is
// compatible with the Euler-factor ratio identity.  The default,
// paper-display, uses char poly Y^2 - a_q q^{-k/2} Y + q^{-1} (eigenvalues
// {alpha/q, beta/q} with alpha beta = q for the twisted roots); the
// alternative paper-text reading (Y^2 - a_q q^{1-k/2} Y + q) is kept
// selectable so the verification suite can falsify it.
enum class TwistConvention { PaperDisplay, PaperText };

struct LocalModuleSpec {
    DecompData dd;
    Matrix<PadicScalar> frob_matrix;  // r x r, invertible over Q_p
    ModuleKind kind = ModuleKind::N;
};

// Group-algebra element with r x r scalar matrix coefficients; evaluation at
// a representation is det(sum eta(g) (x) coeff(g)).
struct MatrixGroupAlg {
    std::int64_t p = 0;
    int level = 0;
    int r = 0;
    std::vector<std::pair<GroupElem, Matrix<PadicScalar>>> terms;
};

MatrixGroupAlg annihilator(const LocalModuleSpec& spec, int prec);

// Per-cycle factorization of det(eta applied to the annihilator) for a
// theta-type rep: eta(Frob) permutes the induced basis, and the determinant
// splits over its cycles; a cycle of length L contributes
// (-1)^(rL) det(sigma X^L - psi(q)^L (prod of twists) I_r), with sigma = 1
// for kind N and the cycle product of the inertia sums for kind M.  The
// product of the factors equals evaluate(spec, rep); the N and M lists agree
// pairwise, which is what local_error_eval cancels.
std::vector<CycElem> theta_cycle_factors(const LocalModuleSpec& spec, const ArtinRep& rep);

struct EvalResult {
    bool indeterminate = false;
    CycElem value;  // meaningful only when !indeterminate
    Rat valuation;
    std::vector<std::string> cancelled_factors;

    static EvalResult indeterminate_result() {
        EvalResult r;
        r.indeterminate = true;
        r.valuation = Rat::infinity();
        return r;
    }
    static EvalResult of(CycElem v) {
        EvalResult r;
        r.valuation = v.valuation();
        r.value = std::move(v);
        return r;
    }
};

// det over the cyclotomic field of eta applied to the annihilator of spec.
EvalResult evaluate(const LocalModuleSpec& spec, const ArtinRep& rep);

enum class PrimeClass { P1, P2 };

// One induced-module summand of the exceptional divisor at q: the rank-2
// Frobenius matrix (P2) or the split pair {delta, delta q^{-1}} (P1, kept as
// eigenvalues so removable 0/0 at psi(F) = delta cancels symbolically).
struct ErrorSummand {
    PrimeClass tag = PrimeClass::P1;
    DecompData dd;
    Matrix<PadicScalar> frob_matrix;
    std::vector<PadicScalar> split_eigenvalues;  // empty when not known split
};

// evaluate(N)/evaluate(M) for the summand, with exact cancellation of equal
// linear factors in the rank-1 psi case; Indeterminate only when a genuine
// zero survives.
EvalResult local_error_eval(const ErrorSummand& summand, const ArtinRep& rep);

}  // namespace ftv
