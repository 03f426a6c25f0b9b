#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftv/group.hpp"
#include "ftv/linalg.hpp"
#include "ftv/parallel.hpp"

namespace ftv {

// Irreducible representations of G_n are psi (1-dimensional, through the
// cyclotomic quotient) and theta_m psi (induced from an exact-order-p^m
// character of the Kummer line, m >= 1, dimension phi(p^m)).
//
// psi_{i,j}(u) = teich(u)^i * zeta_{p^(n-1)}^(j * dlog_{1+p}(u / teich(u))).
struct RepLabel {
    int tame = 0;         // i mod p-1
    int wild = 0;         // j mod p^(n-1)
    int theta_level = 0;  // m; 0 means 1-dimensional psi

    bool operator==(const RepLabel& o) const {
        return tame == o.tame && wild == o.wild && theta_level == o.theta_level;
    }
};

class ArtinRep {
public:
    ArtinRep(std::int64_t p, int level, int prec, RepLabel label);

    std::int64_t prime() const { return p_; }
    int level() const { return n_; }
    int prec() const { return prec_; }
    const RepLabel& label() const { return label_; }
    int dim() const { return dim_; }
    std::string name() const;

    // psi evaluated at a unit u mod p^n (value at cyclotomic level n)
    CycElem psi_value(std::int64_t u) const;

    Matrix<CycElem> matrix_of(const GroupElem& g) const;
    CycElem character(const GroupElem& g) const;  // trace of matrix_of, O(dim)

    // dual representation: psi -> psi^{-1}, theta_m psi -> theta_m psi^{-1};
    // its character satisfies chi*(g) = chi(g^{-1}).
    ArtinRep contragredient() const;

    Matrix<CycElem> apply(const GroupAlgElem& x) const;

private:
    std::int64_t p_;
    int n_;
    int prec_;
    RepLabel label_;
    int dim_;
    std::int64_t pn_, pm_;
    std::vector<std::int64_t> units_m_;  // ascending units mod p^m (m >= 1)
    std::vector<int> unit_index_m_;      // residue mod p^m -> basis index
    std::vector<CycElem> psi_by_unit_;   // psi(u), indexed like units_n_
    std::vector<std::int64_t> units_n_;
    std::vector<int> unit_index_n_;

    CycElem zeta_m_pow(std::int64_t k) const;  // zeta_{p^m}^k at value level n
};

// Duplicate-free list of all irreducibles of G_n (psi first, then theta-type
// by ascending m), deduplicated by exact character equality.  Throws
// CompletenessFailure if sum of dim^2 != |G_n|.
std::vector<ArtinRep> enumerate_irreps(std::int64_t p, int level, int prec);

// Fixed enumeration order of G_n (u ascending units, b ascending).
std::vector<GroupElem> all_group_elements(std::int64_t p, int level);

// Dimension of the fixed space of matrix_of(inertia_gen): 1 for psi, 0 for
// all theta-type representations at q != p.
int inertia_invariants_dim(const ArtinRep& rep, const DecompData& dd);

// (+1, -1) eigenvalue multiplicities of the complex-conjugation involution
// matrix_of((-1, 0)).
std::pair<int, int> complex_conjugation_signs(const ArtinRep& rep);

// Sum over g of chi(g) chi'(g^{-1}); equals |G_n| iff the representations
// coincide, 0 otherwise.  The pair loop is the parallel kernel; Exec::Serial
// is the reference path.
struct OrthogonalityResult {
    bool ok = true;
    std::string detail;
};
OrthogonalityResult character_orthogonality(const std::vector<ArtinRep>& reps, Exec exec);

// The same representation seen one level higher (wild exponent scales by p).
ArtinRep inflate_rep(const ArtinRep& rep);

}  // namespace ftv
