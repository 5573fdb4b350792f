#include "etfkit/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace etfkit {

ComplexMatrix::ComplexMatrix(std::vector<std::string> row_labels, std::vector<std::string> col_labels)
    : rows_(row_labels.size()),
      cols_(col_labels.size()),
      row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      data_(rows_ * cols_, cdouble{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    for (std::size_t i = 0; i < rows; ++i) row_labels_.push_back(std::to_string(i));
    for (std::size_t j = 0; j < cols; ++j) col_labels_.push_back(std::to_string(j));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

void ComplexMatrix::set_labels(std::vector<std::string> rows, std::vector<std::string> cols) {
    if (rows.size() != rows_ || cols.size() != cols_) throw InvalidArgument("label count does not match matrix shape");
    row_labels_ = std::move(rows);
    col_labels_ = std::move(cols);
}

void ComplexMatrix::set_exact(std::size_t i, std::size_t j, const ExactScalar& v) {
    if (exact_.empty()) exact_.assign(rows_ * cols_, ExactScalar{});
    exact_[i * cols_ + j] = v;
    data_[i * cols_ + j] = v.to_complex();
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(col_labels_, row_labels_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    if (has_exact()) {
        out.exact_.assign(rows_ * cols_, ExactScalar{});
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out.exact_[j * rows_ + i] = exact(i, j).conj();
    }
    return out;
}

ComplexMatrix ComplexMatrix::scaled(cdouble s) const {
    ComplexMatrix out(row_labels_, col_labels_);
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = s * data_[k];
    return out;
}

std::vector<cdouble> ComplexMatrix::column(std::size_t j) const {
    std::vector<cdouble> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidArgument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) m = std::max(m, std::abs(data_[k] - other.data_[k]));
    return m;
}

double ComplexMatrix::frobenius_norm_sq() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return s;
}

double ComplexMatrix::max_off_diagonal() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j) m = std::max(m, std::abs((*this)(i, j)));
    return m;
}

bool ComplexMatrix::exact_equals(const ComplexMatrix& other) const {
    if (!has_exact() || !other.has_exact()) throw InvalidArgument("exact_equals: exact entries missing");
    if (rows_ != other.rows_ || cols_ != other.cols_) return false;
    for (std::size_t k = 0; k < exact_.size(); ++k)
        if (!(exact_[k] == other.exact_[k])) return false;
    return true;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b, bool exact) {
    if (a.cols() != b.rows()) throw InvalidArgument("multiply: inner dimensions differ");
    ComplexMatrix out(a.row_labels(), b.col_labels());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    if (!exact || !a.has_exact() || !b.has_exact()) return out;
    ComplexMatrix ex(a.row_labels(), b.col_labels());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            std::optional<ExactScalar> acc = ExactScalar{};
            for (std::size_t k = 0; k < a.cols() && acc; ++k) {
                if (a.exact(i, k).cyclo().structurally_zero() || b.exact(k, j).cyclo().structurally_zero()) continue;
                acc = ExactScalar::add(*acc, a.exact(i, k) * b.exact(k, j));
            }
            if (!acc) return out;
            ex.set_exact(i, j, *acc);
        }
    return ex;
}

HermitianEigen hermitian_eigen(const ComplexMatrix& A, double tol, int max_sweeps) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw InvalidArgument("hermitian_eigen: matrix is not square");
    ComplexMatrix a = A;
    a.drop_exact();
    ComplexMatrix v = ComplexMatrix::identity(n);
    HermitianEigen out;
    const double scale = std::max(a.frobenius_norm_sq(), 1e-300);
    auto off = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return s;
    };
    for (; out.sweeps < max_sweeps; ++out.sweeps) {
        if (off() <= tol * tol * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const cdouble e = apq / r;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // U restricted to (p, q): [[c, s], [-s conj(e), c conj(e)]]
                const cdouble upp = c, upq = s, uqp = -s * std::conj(e), uqq = c * std::conj(e);
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                    const cdouble vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cdouble apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values.push_back(a(order[j], order[j]).real());
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& A) {
    const auto eig = hermitian_eigen(multiply(A.adjoint(), A));
    std::vector<double> out;
    for (const double lambda : eig.values) out.push_back(std::sqrt(std::max(lambda, 0.0)));
    std::sort(out.rbegin(), out.rend());
    return out;
}

}  // namespace etfkit
