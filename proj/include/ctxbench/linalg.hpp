#pragma once

#include <utility>
#include <vector>

#include "ctxbench/matrix.hpp"

namespace ctxbench {

// c = a * b
Matrix matmul(const Matrix& a, const Matrix& b);
// c = a * b^T   (rows of b are the right-hand vectors)
Matrix matmul_nt(const Matrix& a, const Matrix& b);
// c = a^T * b
Matrix matmul_tn(const Matrix& a, const Matrix& b);
// a * a^T, mirrored so the result is exactly symmetric.
Matrix gram_rows(const Matrix& a);

// (i, j) -> squared Euclidean distance between row i of a and row j of b.
Matrix pairwise_sq_dist(const Matrix& a, const Matrix& b);

struct EigResult {
    std::vector<double> values;  // descending
    Matrix vectors;              // k x n, one unit eigenvector per row
};

// Top-k eigenpairs of a symmetric matrix (Householder tridiagonalization +
// implicit-shift QL). Sign convention: the largest-magnitude component of
// each eigenvector is positive; ties resolved to the lowest index.
EigResult sym_eig(const Matrix& s, std::size_t k);

}  // namespace ctxbench
