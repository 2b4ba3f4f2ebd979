#pragma once
#include "recwidth/displacement.hpp"
#include "recwidth/recurrence.hpp"

namespace recwidth {

// Coefficient-window view of a triangular block during the recursive solve.
// The represented n x n matrix is B[j, u] = coeff_{n + j}(f_u), where the
// window polynomials f_u follow the source spec's recurrence
//   f_u = sum_{v=1..t} g_{base+u, v} f_{u-v}        (u >= t)
// seeded by the stored f_0..f_{t-1}. Splitting off the low or high half of
// the coefficient window yields the two diagonal sub-blocks.
struct ShiftedSpec {
    const RecurrenceSpec* src = nullptr;
    const DyadicTree* tree = nullptr;
    size_t n = 0;    // block size
    size_t base = 0; // recurrence rows are src rows base+u
    std::vector<Poly> seeds;
};

// top-level window view of the whole matrix: f_u = X^n a_u
ShiftedSpec make_shifted(const RecurrenceSpec& spec, const DyadicTree& tree);
// diagonal sub-blocks (n must be even)
ShiftedSpec shifted_leading(const ShiftedSpec& ss);
ShiftedSpec shifted_trailing(const ShiftedSpec& ss);
// dense matrix represented by the window view (test / base-case helper)
DenseMatrix shifted_dense(const ShiftedSpec& ss);

// Solve A^T x = y (default) or A x = y (transposed = false) where A is the
// lower triangular matrix generated by a basic width-t spec (modulus X^n,
// g_{i,0} = 1, coefficient degrees at most the offset, error rows only below
// the width). Throws "matrix singular" when some diagonal entry vanishes.
Vec triangular_solve(const RecurrenceSpec& spec, const Vec& y,
                     bool transposed = true);

// minimal-width regeneration of the product G H^T: returns (G', H') with
// G' H'^T = G H^T and exactly rank(G H^T) columns each
std::pair<DenseMatrix, DenseMatrix> generator_compress(const DenseMatrix& G,
                                                       const DenseMatrix& H);

// Generators of A^{-1} for a strongly regular A given by a Sylvester
// representation with quasiseparable (or band / diagonal) L and R. The
// result satisfies R A^{-1} - A^{-1} L = C' D' and is compressed to the
// exact displacement rank. Throws "not strongly regular" when a leading
// principal minor vanishes.
DisplacementRep displacement_inverse(const DisplacementRep& rep);

} // namespace recwidth
