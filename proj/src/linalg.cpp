// SPDX-License-Identifier: Apache-2.0
//
// isac-game: Stackelberg defense simulator for RIS-assisted ISAC links
// Copyright (C) 2026 The isac-game Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "isac/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace isac
{
    namespace
    {
        Eigen::MatrixXcd to_eigen(const CMatrix &a)
        {
            Eigen::MatrixXcd m(a.rows(), a.cols());
            for (std::size_t r = 0; r < a.rows(); ++r)
                for (std::size_t c = 0; c < a.cols(); ++c)
                    m(r, c) = a(r, c);
            return m;
        }

        // Hermitian part, so the eigensolver only ever sees a self-adjoint input.
        Eigen::MatrixXcd hermitian_part(const CMatrix &a)
        {
            Eigen::MatrixXcd m = to_eigen(a);
            Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
            return h;
        }

        void require_square(const CMatrix &a, const char *what)
        {
            if (!a.is_square())
                throw std::invalid_argument(std::string(what) + ": matrix must be square, got " + a.shape());
        }
    } // namespace

    CMatrix::CMatrix(std::size_t rows, std::size_t cols, cplx fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows)
        {
            if (row.size() != cols_)
                throw std::invalid_argument("CMatrix: ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    CMatrix CMatrix::identity(std::size_t n)
    {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    CMatrix CMatrix::diagonal(const std::vector<cplx> &d)
    {
        CMatrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i)
            m(i, i) = d[i];
        return m;
    }

    CMatrix CMatrix::column(const std::vector<cplx> &v)
    {
        CMatrix m(v.size(), 1);
        m.data_ = v;
        return m;
    }

    std::string CMatrix::shape() const
    {
        return std::to_string(rows_) + "x" + std::to_string(cols_);
    }

    CMatrix &CMatrix::operator+=(const CMatrix &b)
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("CMatrix +: shape mismatch " + shape() + " vs " + b.shape());
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += b.data_[i];
        return *this;
    }

    CMatrix &CMatrix::operator-=(const CMatrix &b)
    {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("CMatrix -: shape mismatch " + shape() + " vs " + b.shape());
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= b.data_[i];
        return *this;
    }

    CMatrix &CMatrix::operator*=(cplx s)
    {
        for (auto &v : data_)
            v *= s;
        return *this;
    }

    bool CMatrix::all_finite() const noexcept
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](const cplx &v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
    }

    double CMatrix::max_abs() const noexcept
    {
        double m = 0.0;
        for (const auto &v : data_)
            m = std::max(m, std::abs(v));
        return m;
    }

    double CMatrix::norm() const noexcept
    {
        return std::sqrt(squared_norm(*this));
    }

    NotPositiveDefinite::NotPositiveDefinite(std::size_t pivot)
        : std::runtime_error("solve_hpd: matrix is not positive definite (Cholesky pivot " + std::to_string(pivot) +
                             " is not positive)"),
          pivot_(pivot)
    {
    }

    CMatrix matmul(const CMatrix &a, const CMatrix &b)
    {
        if (a.cols() != b.rows())
            throw std::invalid_argument("matmul: dimension mismatch " + a.shape() + " * " + b.shape());

        CMatrix out(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
            {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0))
                    continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    CMatrix hermitian(const CMatrix &a)
    {
        CMatrix out(a.cols(), a.rows());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                out(c, r) = std::conj(a(r, c));
        return out;
    }

    cplx trace(const CMatrix &a)
    {
        require_square(a, "trace");
        cplx t = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            t += a(i, i);
        return t;
    }

    CMatrix operator+(CMatrix a, const CMatrix &b)
    {
        a += b;
        return a;
    }

    CMatrix operator-(CMatrix a, const CMatrix &b)
    {
        a -= b;
        return a;
    }

    CMatrix operator*(const CMatrix &a, const CMatrix &b)
    {
        return matmul(a, b);
    }

    CMatrix operator*(cplx s, CMatrix a)
    {
        a *= s;
        return a;
    }

    CMatrix gram(const CMatrix &a)
    {
        return matmul(a, hermitian(a));
    }

    cplx quad_form(const CMatrix &x, const CMatrix &a)
    {
        if (x.cols() != 1 || a.rows() != x.rows() || a.cols() != x.rows())
            throw std::invalid_argument("quad_form: shape mismatch x=" + x.shape() + " A=" + a.shape());
        cplx acc = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
        {
            cplx row = 0.0;
            for (std::size_t j = 0; j < a.cols(); ++j)
                row += a(i, j) * x(j, 0);
            acc += std::conj(x(i, 0)) * row;
        }
        return acc;
    }

    double squared_norm(const CMatrix &x) noexcept
    {
        double s = 0.0;
        for (const auto &v : x.data())
            s += std::norm(v);
        return s;
    }

    CMatrix solve_hpd(const CMatrix &j, const CMatrix &b)
    {
        require_square(j, "solve_hpd");
        if (j.rows() != b.rows())
            throw std::invalid_argument("solve_hpd: dimension mismatch " + j.shape() + " vs rhs " + b.shape());

        const std::size_t n = j.rows();
        const double scale = j.max_abs();
        if (scale == 0.0)
            throw NotPositiveDefinite(0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = r; c < n; ++c)
                if (std::abs(j(r, c) - std::conj(j(c, r))) > 1e-10 * scale)
                    throw std::invalid_argument("solve_hpd: matrix is not Hermitian at (" + std::to_string(r) + "," +
                                                std::to_string(c) + ")");

        // Lower-triangular L with J = L L^H.
        CMatrix l(n, n);
        for (std::size_t c = 0; c < n; ++c)
        {
            double d = j(c, c).real();
            for (std::size_t k = 0; k < c; ++k)
                d -= std::norm(l(c, k));
            if (!(d > 0.0) || !std::isfinite(d))
                throw NotPositiveDefinite(c);
            const double ld = std::sqrt(d);
            l(c, c) = ld;
            for (std::size_t r = c + 1; r < n; ++r)
            {
                cplx s = j(r, c);
                for (std::size_t k = 0; k < c; ++k)
                    s -= l(r, k) * std::conj(l(c, k));
                l(r, c) = s / ld;
            }
        }

        CMatrix x = b;
        for (std::size_t col = 0; col < b.cols(); ++col)
        {
            // forward: L y = b
            for (std::size_t r = 0; r < n; ++r)
            {
                cplx s = x(r, col);
                for (std::size_t k = 0; k < r; ++k)
                    s -= l(r, k) * x(k, col);
                x(r, col) = s / l(r, r);
            }
            // backward: L^H x = y
            for (std::size_t r = n; r-- > 0;)
            {
                cplx s = x(r, col);
                for (std::size_t k = r + 1; k < n; ++k)
                    s -= std::conj(l(k, r)) * x(k, col);
                x(r, col) = s / l(r, r);
            }
        }
        return x;
    }

    std::vector<double> hermitian_eigenvalues(const CMatrix &a)
    {
        require_square(a, "hermitian_eigenvalues");
        if (a.empty())
            return {};
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(a), Eigen::EigenvaluesOnly);
        const auto &ev = es.eigenvalues();
        return std::vector<double>(ev.data(), ev.data() + ev.size());
    }

    bool is_hermitian_psd(const CMatrix &a, double tol)
    {
        require_square(a, "is_hermitian_psd");
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = r; c < a.cols(); ++c)
                if (std::abs(a(r, c) - std::conj(a(c, r))) > tol)
                    return false;
        const auto ev = hermitian_eigenvalues(a);
        return ev.empty() || ev.front() >= -tol;
    }

    CMatrix hermitian_sqrt(const CMatrix &a)
    {
        require_square(a, "hermitian_sqrt");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(a));
        Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        Eigen::MatrixXcd s = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();

        CMatrix out(a.rows(), a.cols());
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                out(r, c) = s(r, c);
        return out;
    }

    CMatrix kron(const CMatrix &a, const CMatrix &b)
    {
        CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (std::size_t ar = 0; ar < a.rows(); ++ar)
            for (std::size_t ac = 0; ac < a.cols(); ++ac)
                for (std::size_t br = 0; br < b.rows(); ++br)
                    for (std::size_t bc = 0; bc < b.cols(); ++bc)
                        out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
        return out;
    }

} // namespace isac
