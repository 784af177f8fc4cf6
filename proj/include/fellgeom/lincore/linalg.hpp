#pragma once

#include <functional>
#include <vector>

#include "fellgeom/lincore/types.hpp"

namespace fellgeom {

// Largest singular value; 0 for empty matrices.
double op_norm(const Matrix& m);

// [x, y] = xy - yx. Throws ValidationError on shape mismatch.
Matrix commutator(const Matrix& x, const Matrix& y);

Matrix kron(const Matrix& a, const Matrix& b);

// ||a - b||_F / max(||a||_F, ||b||_F); 0 when both vanish.
double relative_difference(const Matrix& a, const Matrix& b);
bool approx_equal(const Matrix& a, const Matrix& b, double tol = kDefaultTolerance);

bool is_hermitian(const Matrix& m, double tol = kDefaultTolerance);
bool is_unitary(const Matrix& m, double tol = kDefaultTolerance);

// Eigenvalues ascending. Only the lower triangle is read.
RealVector hermitian_eigenvalues(const Matrix& h);

// f(h) through the spectral decomposition of a Hermitian matrix.
Matrix hermitian_function(const Matrix& h, const std::function<Complex(double)>& f);

RealVector singular_values(const Matrix& m);

// Real coordinates (Re, Im) of all entries, column major.
RealVector realify(const Matrix& m);
Matrix complexify(const RealVector& v, Eigen::Index rows, Eigen::Index cols);

// Rank with singular values below cutoff * sigma_max treated as zero.
int numerical_rank(const RealMatrix& m, double relative_cutoff = 1e-8);

// Orthonormal basis (columns) of the numerical null space.
RealMatrix null_space(const RealMatrix& m, double relative_cutoff = 1e-8);

// Orthonormal basis of the column span.
RealMatrix column_span(const RealMatrix& m, double relative_cutoff = 1e-8);

// Complex dimension of the span of a list of equally shaped matrices.
int complex_span_dimension(const std::vector<Matrix>& ms, double relative_cutoff = 1e-9);

}  // namespace fellgeom
