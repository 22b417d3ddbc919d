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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace isac
{
    using cplx = std::complex<double>;

    /// Dense complex matrix, row-major. Sized for the handful-of-antennas
    /// problems in this library (16x16 at most with default scenarios).
    class CMatrix
    {
    public:
        CMatrix() = default;
        CMatrix(std::size_t rows, std::size_t cols, cplx fill = cplx(0.0, 0.0));

        /// Row-major construction from nested lists; all rows must have equal length.
        CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

        static CMatrix identity(std::size_t n);
        static CMatrix zeros(std::size_t rows, std::size_t cols) { return CMatrix(rows, cols); }
        static CMatrix diagonal(const std::vector<cplx> &d);
        static CMatrix column(const std::vector<cplx> &v);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        std::size_t size() const noexcept { return data_.size(); }
        bool is_square() const noexcept { return rows_ == cols_; }
        bool empty() const noexcept { return data_.empty(); }

        cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
        const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

        const std::vector<cplx> &data() const noexcept { return data_; }
        std::vector<cplx> &data() noexcept { return data_; }

        std::string shape() const;

        CMatrix &operator+=(const CMatrix &b);
        CMatrix &operator-=(const CMatrix &b);
        CMatrix &operator*=(cplx s);

        bool all_finite() const noexcept;

        /// Largest absolute entry.
        double max_abs() const noexcept;

        /// Frobenius norm.
        double norm() const noexcept;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cplx> data_;
    };

    /// Raised by solve_hpd when Cholesky factorisation hits a non-positive pivot.
    class NotPositiveDefinite : public std::runtime_error
    {
    public:
        explicit NotPositiveDefinite(std::size_t pivot);
        std::size_t pivot() const noexcept { return pivot_; }

    private:
        std::size_t pivot_;
    };

    CMatrix matmul(const CMatrix &a, const CMatrix &b);
    CMatrix hermitian(const CMatrix &a);
    cplx trace(const CMatrix &a);

    CMatrix operator+(CMatrix a, const CMatrix &b);
    CMatrix operator-(CMatrix a, const CMatrix &b);
    CMatrix operator*(const CMatrix &a, const CMatrix &b);
    CMatrix operator*(cplx s, CMatrix a);
    inline CMatrix operator*(double s, CMatrix a) { return cplx(s, 0.0) * std::move(a); }

    /// a * a^H
    CMatrix gram(const CMatrix &a);

    /// Quadratic form x^H A x for a column vector x.
    cplx quad_form(const CMatrix &x, const CMatrix &a);

    /// Squared 2-norm of a column (or any) matrix.
    double squared_norm(const CMatrix &x) noexcept;

    /// Solves J X = B for Hermitian positive definite J via Cholesky.
    /// J must be Hermitian to 1e-10 (relative to its largest entry).
    CMatrix solve_hpd(const CMatrix &j, const CMatrix &b);

    /// Eigenvalues of the Hermitian part of `a`, ascending.
    std::vector<double> hermitian_eigenvalues(const CMatrix &a);

    /// True iff max|a - a^H| <= tol and the smallest eigenvalue is >= -tol.
    bool is_hermitian_psd(const CMatrix &a, double tol);

    /// Principal square root of a Hermitian PSD matrix. Negative eigenvalues
    /// are clamped to zero before the root is taken.
    CMatrix hermitian_sqrt(const CMatrix &a);

    /// Kronecker product.
    CMatrix kron(const CMatrix &a, const CMatrix &b);

} // namespace isac
