#pragma once
#include <vector>

#include "recwidth/poly.hpp"
#include "recwidth/quasisep.hpp"

namespace recwidth {

enum class RKind { Shift, Companion, Diagonal, Band, Quasi };

// Triangular band matrix of depth delta (width delta+1). diags[j] holds the
// j-th diagonal: lower -> entry (k+j, k) = diags[j][k]; upper -> entry
// (k, k+j) = diags[j][k]. Entries outside the band are absent.
struct BandMatrix {
    size_t n = 0;
    size_t delta = 0;
    bool lower = true;
    std::vector<Vec> diags; // diags[j].size() == n - j

    FieldElement diag_entry(size_t j, size_t k) const { return diags[j][k]; }
};

// The operator R driving the recurrence: a_i is a polynomial in R applied to
// earlier rows, represented by one of five structured kinds. `transposed`
// marks the operator as R^T for the kinds whose transpose leaves the kind
// set (Shift/Companion); Diagonal is symmetric and Band/Quasi transpose
// structurally.
struct RDescriptor {
    RKind kind = RKind::Shift;
    size_t n = 0;
    bool transposed = false;
    Poly modulus;    // Companion: monic of degree n
    Vec points;      // Diagonal
    BandMatrix band; // Band
    QuasiPtr quasi;  // Quasi

    static RDescriptor shift(size_t n);
    static RDescriptor companion(Poly modulus);
    static RDescriptor diagonal(Vec points);
    static RDescriptor banded(BandMatrix band);
    static RDescriptor quasisep(QuasiPtr q);
};

DenseMatrix band_to_dense(const BandMatrix& b);
BandMatrix band_transpose(const BandMatrix& b);
DenseMatrix r_to_dense(const RDescriptor& R);
RDescriptor r_transpose(const RDescriptor& R);
Vec r_apply(const RDescriptor& R, const Vec& x); // y = R x
// true when the descriptor carries an explicit annihilating modulus
// (Shift: X^n, Companion: stored polynomial)
bool r_has_modulus(const RDescriptor& R);
Poly r_modulus(const RDescriptor& R);

// Width-(t,r) recurrence: g_{i,0}(R) a_i = sum_{j=1}^{min(t,i)} g_{i,j}(R)
// a_{i-j} + f_i with F = C D of rank <= r; deg g_{i,j} <= d*j + dbar.
struct RecurrenceSpec {
    size_t rows = 0; // M_rows: generated row count
    size_t cols = 0; // N: row length
    size_t t = 0;    // recurrence width
    size_t r = 0;    // error rank
    size_t d = 0;
    size_t dbar = 0;
    std::vector<std::vector<Poly>> g; // g[i][j], 0 <= j <= min(t, i)
    DenseMatrix C;                    // rows x r
    DenseMatrix D;                    // r x cols
    RDescriptor R;

    size_t width() const { return t > 0 ? t : 1; } // effective window size

    // row accessors with zero/identity padding beyond stored rows
    Poly lead_coeff(size_t i) const { // g_{i,0}; identity rows past the end
        return i < rows ? g[i][0] : Poly::one();
    }
    Poly coeff(size_t i, size_t j) const { // g_{i,j}, zero when absent
        if (i >= rows || j >= g[i].size()) return Poly();
        return g[i][j];
    }
    FieldElement c_entry(size_t i, size_t k) const {
        return i < rows ? C.at(i, k) : FieldElement(0);
    }
};

// throws std::invalid_argument on malformed dimensions or degree bounds;
// throws std::runtime_error("leading coefficients share roots with modulus")
// when some g_{i,0}(R) is singular (checked for Shift/Companion/Diagonal/Band)
void validate_spec(const RecurrenceSpec& spec);

// Polynomial matrix, row-major.
struct PolyMat {
    size_t rows = 0, cols = 0;
    std::vector<Poly> a;

    PolyMat() = default;
    PolyMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

    Poly& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Poly& at(size_t i, size_t j) const { return a[i * cols + j]; }

    static PolyMat identity(size_t n) {
        PolyMat m(n, n);
        for (size_t i = 0; i < n; ++i) m.at(i, i) = Poly::one();
        return m;
    }
};

using TransitionMatrix = PolyMat;

PolyMat pm_mul(const PolyMat& A, const PolyMat& B);
PolyMat pm_add(const PolyMat& A, const PolyMat& B);
PolyMat pm_scale(const PolyMat& A, const Poly& s);

// scaled coefficient g'_{i,j} = g_{i,j} * prod_{k=i-j+1}^{i-1} g_{k,0}
Poly scaled_coeff(const RecurrenceSpec& spec, size_t i, size_t j);

// Transition advancing the window past row i (companion shape: identity
// shifted up one row, bottom row g'_{i,t}, ..., g'_{i,1}, zero-padded when
// row i stores fewer than t coefficients).
TransitionMatrix transition(const RecurrenceSpec& spec, size_t i);

// Precomputed dyadic products over leaf positions p = 0..m-1, where the leaf
// factor at position p is transition(spec, p+1) (identity rows pad past the
// stored ones). Node b at level k covers positions [b*2^k, (b+1)*2^k).
//   T:      ranged transition products T_[l:r] = T_{r-1} ... T_l
//   S:      scale products S_[l:r] = prod_{k=l}^{r-1} g_{k,0}
//   Sshift: shifted scale products prod_{k=l+1}^{r} g_{k,0}
//   kcol:   t x r error-injection blocks
//           sum_{j=l+1}^{r} T_[j:r] e_{t-1} C[j,k] prod_{v=l+1}^{j-1} g_{v,0}
struct DyadicTree {
    size_t m = 0; // padded row count (power of two)
    size_t t = 0; // effective width
    size_t r = 0;
    std::vector<std::vector<PolyMat>> T;
    std::vector<std::vector<Poly>> S;
    std::vector<std::vector<Poly>> Sshift;
    std::vector<std::vector<PolyMat>> kcol;
    Poly cmod; // annihilating modulus of the operator, fixed at build time

    size_t levels() const { return T.size(); }
};

DyadicTree build_dyadic_tree(const RecurrenceSpec& spec);

// product of leaf factors over positions [lo, hi), assembled from O(log m)
// tree nodes; ranged_scale is the matching product of leading coefficients
PolyMat ranged_transition(const DyadicTree& tree, size_t lo, size_t hi);
Poly ranged_scale(const DyadicTree& tree, size_t lo, size_t hi);

// h_{i,j}(X): entry (i,j) of H = G^{-1} mod c_R; testing helper, not
// near-linear. Requires a descriptor with an explicit modulus.
Poly structure_entry(const RecurrenceSpec& spec, const DyadicTree& tree,
                     size_t i, size_t j);

} // namespace recwidth
