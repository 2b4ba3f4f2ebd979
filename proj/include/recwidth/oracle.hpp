#pragma once
#include "recwidth/displacement.hpp"
#include "recwidth/linalg.hpp"
#include "recwidth/recurrence.hpp"

namespace recwidth {

// Dense reference implementations: literal row-by-row evaluation of the
// defining equations, with no shared machinery beyond basic field/poly
// arithmetic. Intended for sizes up to a few hundred.

// rows of A from the recurrence g_{i,0}(R) a_i = sum_j g_{i,j}(R) a_{i-j} + f_i
DenseMatrix dense_from_spec(const RecurrenceSpec& spec);

// unique solution of the displacement equation (residual re-checked before
// returning)
DenseMatrix dense_from_displacement(const DisplacementRep& rep);

// Gaussian elimination solve of A x = y ("matrix singular" when defective)
Vec dense_solve(const DenseMatrix& A, const Vec& y);

// independent references for the application tower
DenseMatrix stirling_table_oracle(size_t n);
Vec bernoulli_oracle(size_t n);
// value of sum_i coeffs[i] p_i(x) by running the three-term recurrence
FieldElement ortho_eval_oracle(const Vec& alpha, const Vec& beta,
                               const Vec& gamma, const Vec& coeffs,
                               FieldElement x);

} // namespace recwidth
