#pragma once

#include <stdexcept>
#include <vector>

#include "zhat/rational.hpp"

namespace zhat {

/* Dense exact rational matrix; everything here is tiny (plumbing graphs),
 * so plain Gaussian elimination over Q is the right tool. */
class Matrix {
public:
	Matrix() = default;
	explicit Matrix(std::size_t n) : n_(n), a_(n, std::vector<Rational>(n, 0)) {}

	static Matrix identity(std::size_t n)
	{
		Matrix m(n);
		for (std::size_t i = 0; i < n; ++i) m.a_[i][i] = 1;
		return m;
	}

	std::size_t size() const { return n_; }
	Rational &operator()(std::size_t i, std::size_t j) { return a_[i][j]; }
	const Rational &operator()(std::size_t i, std::size_t j) const
	{
		return a_[i][j];
	}

	bool is_symmetric() const
	{
		for (std::size_t i = 0; i < n_; ++i)
			for (std::size_t j = i + 1; j < n_; ++j)
				if (a_[i][j] != a_[j][i]) return false;
		return true;
	}

	Rational determinant() const
	{
		Matrix m = *this;
		Rational det = 1;
		for (std::size_t col = 0; col < n_; ++col) {
			std::size_t piv = col;
			while (piv < n_ && m.a_[piv][col] == 0) ++piv;
			if (piv == n_) return 0;
			if (piv != col) {
				std::swap(m.a_[piv], m.a_[col]);
				det = -det;
			}
			det *= m.a_[col][col];
			for (std::size_t r = col + 1; r < n_; ++r) {
				if (m.a_[r][col] == 0) continue;
				Rational f = m.a_[r][col] / m.a_[col][col];
				for (std::size_t c = col; c < n_; ++c)
					m.a_[r][c] -= f * m.a_[col][c];
			}
		}
		return det;
	}

	Matrix inverse() const
	{
		Matrix m = *this, inv = identity(n_);
		for (std::size_t col = 0; col < n_; ++col) {
			std::size_t piv = col;
			while (piv < n_ && m.a_[piv][col] == 0) ++piv;
			if (piv == n_)
				throw std::domain_error("Matrix: singular");
			std::swap(m.a_[piv], m.a_[col]);
			std::swap(inv.a_[piv], inv.a_[col]);
			Rational d = m.a_[col][col];
			for (std::size_t c = 0; c < n_; ++c) {
				m.a_[col][c] /= d;
				inv.a_[col][c] /= d;
			}
			for (std::size_t r = 0; r < n_; ++r) {
				if (r == col || m.a_[r][col] == 0) continue;
				Rational f = m.a_[r][col];
				for (std::size_t c = 0; c < n_; ++c) {
					m.a_[r][c] -= f * m.a_[col][c];
					inv.a_[r][c] -= f * inv.a_[col][c];
				}
			}
		}
		return inv;
	}

	std::vector<Rational> mul(const std::vector<Rational> &x) const
	{
		std::vector<Rational> y(n_, 0);
		for (std::size_t i = 0; i < n_; ++i)
			for (std::size_t j = 0; j < n_; ++j)
				y[i] += a_[i][j] * x[j];
		return y;
	}

	Matrix principal_submatrix(const std::vector<std::size_t> &idx) const
	{
		Matrix m(idx.size());
		for (std::size_t i = 0; i < idx.size(); ++i)
			for (std::size_t j = 0; j < idx.size(); ++j)
				m.a_[i][j] = a_[idx[i]][idx[j]];
		return m;
	}

private:
	std::size_t n_ = 0;
	std::vector<std::vector<Rational>> a_;
};

struct Inertia {
	int positives = 0;
	int negatives = 0;
	int zeros = 0;
	int signature() const { return positives - negatives; }
};

/* Exact inertia by symmetric Gaussian reduction with symmetric pivoting.
 * When every available diagonal entry vanishes but the block is nonzero,
 * the 2x2 hyperbolic rule applies: one positive and one negative. */
inline Inertia inertia(Matrix m)
{
	if (!m.is_symmetric())
		throw std::domain_error("inertia: matrix not symmetric");
	std::size_t n = m.size();
	std::vector<bool> done(n, false);
	Inertia in;
	std::size_t remaining = n;
	auto eliminate = [&](std::size_t p) {
		/* rank-one update A -= (A e_p)(A e_p)^T / A_pp on live rows */
		Rational d = m(p, p);
		for (std::size_t r = 0; r < n; ++r) {
			if (done[r] || r == p || m(r, p) == 0) continue;
			Rational f = m(r, p) / d;
			for (std::size_t c = 0; c < n; ++c) {
				if (done[c] || c == p) continue;
				m(r, c) -= f * m(p, c);
			}
		}
		done[p] = true;
		--remaining;
	};
	while (remaining > 0) {
		std::size_t piv = n;
		for (std::size_t i = 0; i < n; ++i)
			if (!done[i] && m(i, i) != 0) { piv = i; break; }
		if (piv < n) {
			if (m(piv, piv) > 0) ++in.positives; else ++in.negatives;
			eliminate(piv);
			continue;
		}
		/* all live diagonal entries are zero */
		std::size_t pi = n, pj = n;
		for (std::size_t i = 0; i < n && pi == n; ++i) {
			if (done[i]) continue;
			for (std::size_t j = i + 1; j < n; ++j)
				if (!done[j] && m(i, j) != 0) { pi = i; pj = j; break; }
		}
		if (pi == n) { /* live block is identically zero */
			in.zeros += static_cast<int>(remaining);
			break;
		}
		/* hyperbolic block [[0,a],[a,0]]: inertia (1,1); pivot it out */
		Rational a = m(pi, pj);
		++in.positives;
		++in.negatives;
		for (std::size_t r = 0; r < n; ++r) {
			if (done[r] || r == pi || r == pj) continue;
			Rational fi = m(r, pi) / a, fj = m(r, pj) / a;
			if (fi == 0 && fj == 0) continue;
			for (std::size_t c = 0; c < n; ++c) {
				if (done[c] || c == pi || c == pj) continue;
				m(r, c) -= fi * m(pj, c) + fj * m(pi, c);
			}
		}
		done[pi] = done[pj] = true;
		remaining -= 2;
	}
	return in;
}

/* Smith-style diagonalization of an integer matrix by unimodular row and
 * column operations: returns (U, D, V) with U A V = D diagonal. */
struct SmithForm {
	std::vector<std::vector<Int>> U, D, V;
};

inline SmithForm smith_normal_form(std::vector<std::vector<Int>> a)
{
	std::size_t n = a.size();
	auto ident = [n]() {
		std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
		for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
		return m;
	};
	SmithForm f{ident(), {}, ident()};
	auto rowop = [&](std::size_t r1, std::size_t r2, const Int &k) {
		for (std::size_t c = 0; c < n; ++c) {
			a[r1][c] += k * a[r2][c];
			f.U[r1][c] += k * f.U[r2][c];
		}
	};
	auto colop = [&](std::size_t c1, std::size_t c2, const Int &k) {
		for (std::size_t r = 0; r < n; ++r) {
			a[r][c1] += k * a[r][c2];
			f.V[r][c1] += k * f.V[r][c2];
		}
	};
	auto rowswap = [&](std::size_t r1, std::size_t r2) {
		std::swap(a[r1], a[r2]);
		std::swap(f.U[r1], f.U[r2]);
	};
	auto colswap = [&](std::size_t c1, std::size_t c2) {
		for (std::size_t r = 0; r < n; ++r) {
			std::swap(a[r][c1], a[r][c2]);
			std::swap(f.V[r][c1], f.V[r][c2]);
		}
	};
	for (std::size_t t = 0; t < n; ++t) {
		/* move a nonzero entry of minimal absolute value to (t,t) */
		while (true) {
			std::size_t bi = n, bj = n;
			for (std::size_t i = t; i < n; ++i)
				for (std::size_t j = t; j < n; ++j)
					if (a[i][j] != 0 &&
					    (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) {
						bi = i; bj = j;
					}
			if (bi == n) break; /* block is zero */
			if (bi != t) rowswap(bi, t);
			if (bj != t) colswap(bj, t);
			bool dirty = false;
			for (std::size_t i = t + 1; i < n; ++i) {
				if (a[i][t] == 0) continue;
				Int k = -(a[i][t] / a[t][t]);
				rowop(i, t, k);
				if (a[i][t] != 0) dirty = true;
			}
			for (std::size_t j = t + 1; j < n; ++j) {
				if (a[t][j] == 0) continue;
				Int k = -(a[t][j] / a[t][t]);
				colop(j, t, k);
				if (a[t][j] != 0) dirty = true;
			}
			if (!dirty) {
				bool clean = true;
				for (std::size_t i = t + 1; i < n && clean; ++i)
					if (a[i][t] != 0) clean = false;
				for (std::size_t j = t + 1; j < n && clean; ++j)
					if (a[t][j] != 0) clean = false;
				if (clean) break;
			}
		}
		if (a[t][t] < 0) {
			for (std::size_t c = 0; c < n; ++c) a[t][c] = -a[t][c];
			for (std::size_t c = 0; c < n; ++c) f.U[t][c] = -f.U[t][c];
		}
	}
	f.D = a;
	return f;
}

} // namespace zhat
