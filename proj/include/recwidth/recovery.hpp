#pragma once
#include "recwidth/linalg.hpp"
#include "recwidth/recurrence.hpp"

namespace recwidth {

// Result of fitting a width-t recurrence to a dense matrix. On success the
// spec regenerates the matrix exactly; on failure row_ok flags the rows whose
// fit left a nonzero residual (rows below the width are always seeds).
struct FitReport {
    bool success = false;
    RecurrenceSpec spec;
    std::vector<uint8_t> row_ok;
};

// Fit per-row coefficients g_{i,j} (degree <= j, g_{i,0} = 1, modulus X^n)
// so that a_i = sum_j g_{i,j} a_{i-j} holds for every row i >= t; the first
// t rows become the seed rows of the returned spec. Requires the first t
// rows to satisfy deg(a_i) <= i, and n > t(t+3)/2 ("insufficient
// constraints" otherwise).
FitReport recover_recurrence(const DenseMatrix& A, size_t t);

} // namespace recwidth
