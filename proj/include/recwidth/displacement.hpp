#pragma once
#include "recwidth/linalg.hpp"
#include "recwidth/quasisep.hpp"
#include "recwidth/recurrence.hpp"

namespace recwidth {

enum class DispOp { Sylvester, Stein };

// Low displacement rank representation of a rows x cols matrix A:
//   Sylvester:  L A - A R = C D
//   Stein:      A - L A R = C D
// L acts on rows (size = rows), R on columns (size = cols); C is rows x r
// and D is r x cols. L must be triangular-band, diagonal, or quasiseparable;
// R may be any descriptor kind.
struct DisplacementRep {
    DispOp op = DispOp::Sylvester;
    RDescriptor L;
    RDescriptor R;
    DenseMatrix C;
    DenseMatrix D;

    size_t rows() const { return L.n; }
    size_t cols() const { return R.n; }
    size_t rank() const { return C.cols; }
};

// throws "displacement operator not invertible" unless the displacement
// equation determines A uniquely (disjoint spectra for Sylvester, no
// reciprocal eigenvalue pair for Stein)
void check_displacement_unique(const DisplacementRep& rep);

// Row recurrence induced by a triangular-band (or diagonal) L: a modular
// recurrence spec over R^T whose generated matrix is A. For an upper band L
// the returned spec generates J A (rows reversed), where J is the index
// reversal; disp_mult performs the reversal internally.
RecurrenceSpec displacement_to_recurrence(const DisplacementRep& rep);

// A b (transposed = false) or A^T b (transposed = true)
Vec disp_mult(const DisplacementRep& rep, const Vec& b, bool transposed);

// representation of A^T
DisplacementRep transpose_rep(const DisplacementRep& rep);

// num / den = B^T (X I - R)^{-1} C entrywise, with den = det(X I - R) monic
// of degree n and num entries of degree <= n-1 (B is n x k, C is n x k2)
struct Resolvent {
    PolyMat num;
    Poly den;
};
Resolvent resolvent(const DenseMatrix& B, const QuasiSep& R,
                    const DenseMatrix& C);

} // namespace recwidth
