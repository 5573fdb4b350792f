#pragma once

// Dense labeled complex matrices with optional exact entries, and a cyclic
// Jacobi eigensolver for small Hermitian matrices.

#include <optional>
#include <string>
#include <vector>

#include "etfkit/cyclotomic.hpp"

namespace etfkit {

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels);
    ComplexMatrix(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] const std::vector<std::string>& row_labels() const { return row_labels_; }
    [[nodiscard]] const std::vector<std::string>& col_labels() const { return col_labels_; }
    void set_labels(std::vector<std::string> rows, std::vector<std::string> cols);

    [[nodiscard]] cdouble operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    cdouble& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    /// Exact entries are either present for every entry or absent altogether.
    [[nodiscard]] bool has_exact() const { return !exact_.empty(); }
    [[nodiscard]] const ExactScalar& exact(std::size_t i, std::size_t j) const { return exact_[i * cols_ + j]; }
    /// Sets both the exact value and its complex embedding.
    void set_exact(std::size_t i, std::size_t j, const ExactScalar& v);
    void drop_exact() { exact_.clear(); }

    [[nodiscard]] ComplexMatrix adjoint() const;
    [[nodiscard]] ComplexMatrix scaled(cdouble s) const;
    /// Column j as a vector.
    [[nodiscard]] std::vector<cdouble> column(std::size_t j) const;

    /// Max-entry distance (infinity norm of the entrywise difference).
    [[nodiscard]] double max_abs_diff(const ComplexMatrix& other) const;
    [[nodiscard]] double frobenius_norm_sq() const;
    /// Largest modulus among entries off the diagonal.
    [[nodiscard]] double max_off_diagonal() const;

    /// Entrywise exact equality; requires exact forms on both sides.
    [[nodiscard]] bool exact_equals(const ComplexMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::string> row_labels_;
    std::vector<std::string> col_labels_;
    std::vector<cdouble> data_;
    std::vector<ExactScalar> exact_;
};

/// a * b in doubles. With `exact` and exact forms on both factors the product
/// carries exact entries too (when all summands share one radical).
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b, bool exact = false);

/// Eigenvalues (ascending) and eigenvectors (columns) of a Hermitian matrix.
struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors;
    int sweeps = 0;
};

/// Cyclic complex Jacobi rotations until the off-diagonal Frobenius mass falls below `tol`.
HermitianEigen hermitian_eigen(const ComplexMatrix& A, double tol = 1e-15, int max_sweeps = 100);

/// Singular values of A in descending order, via eigenvalues of A* A.
std::vector<double> singular_values(const ComplexMatrix& A);

}  // namespace etfkit
