#pragma once

#include <algorithm>
#include <array>
#include <json.hpp>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "zhat/matrix.hpp"

namespace zhat {

struct ParseError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

/* Weighted simple graph (V, E, lambda); vertex order is preserved as
 * given in the input document. */
class PlumbingGraph {
public:
	PlumbingGraph(std::vector<std::pair<Int, Int>> vertices,
		      std::vector<std::pair<Int, Int>> edges)
	    : vertices_(std::move(vertices)), edges_(std::move(edges))
	{
		std::map<Int, std::size_t> index;
		for (std::size_t i = 0; i < vertices_.size(); ++i) {
			auto [id, w] = vertices_[i];
			if (!index.emplace(id, i).second)
				throw ParseError("duplicate vertex id " + id.str());
		}
		std::set<std::pair<Int, Int>> seen;
		for (auto &[u, v] : edges_) {
			if (u == v)
				throw ParseError("self-loop at vertex " + u.str());
			if (!index.count(u))
				throw ParseError("unknown vertex id in edge list: " + u.str());
			if (!index.count(v))
				throw ParseError("unknown vertex id in edge list: " + v.str());
			auto key = std::minmax(u, v);
			if (!seen.insert(key).second)
				throw ParseError("duplicate edge " + u.str() + "-" + v.str());
		}
		index_ = std::move(index);
	}

	std::size_t size() const { return vertices_.size(); }
	const std::vector<std::pair<Int, Int>> &vertices() const { return vertices_; }
	const std::vector<std::pair<Int, Int>> &edges() const { return edges_; }

	Int weight(std::size_t i) const { return vertices_[i].second; }

	int degree(std::size_t i) const
	{
		const Int &id = vertices_[i].first;
		int d = 0;
		for (auto &[u, v] : edges_)
			if (u == id || v == id) ++d;
		return d;
	}

	/* delta_v = deg(v) mod 2 */
	std::vector<int> parity_vector() const
	{
		std::vector<int> d(size());
		for (std::size_t i = 0; i < size(); ++i) d[i] = degree(i) % 2;
		return d;
	}

	Matrix adjacency() const
	{
		Matrix m(size());
		for (std::size_t i = 0; i < size(); ++i)
			m(i, i) = Rational(weight(i));
		for (auto &[u, v] : edges_) {
			std::size_t i = index_.at(u), j = index_.at(v);
			m(i, j) = 1;
			m(j, i) = 1;
		}
		return m;
	}

private:
	std::vector<std::pair<Int, Int>> vertices_;
	std::vector<std::pair<Int, Int>> edges_;
	std::map<Int, std::size_t> index_;
};

inline PlumbingGraph parse_plumbing(const nlohmann::json &doc)
{
	std::vector<std::pair<Int, Int>> verts, edges;
	if (!doc.contains("vertices"))
		throw ParseError("missing \"vertices\"");
	for (auto &v : doc.at("vertices")) {
		if (!v.contains("id") || !v.at("id").is_number_integer())
			throw ParseError("vertex without integer id");
		if (!v.contains("weight") || !v.at("weight").is_number_integer())
			throw ParseError("non-integer weight at vertex " +
					 v.at("id").dump());
		verts.emplace_back(Int(v.at("id").get<std::int64_t>()),
				   Int(v.at("weight").get<std::int64_t>()));
	}
	if (doc.contains("edges"))
		for (auto &e : doc.at("edges")) {
			if (!e.is_array() || e.size() != 2 ||
			    !e[0].is_number_integer() || !e[1].is_number_integer())
				throw ParseError("malformed edge " + e.dump());
			edges.emplace_back(Int(e[0].get<std::int64_t>()),
					   Int(e[1].get<std::int64_t>()));
		}
	return PlumbingGraph(std::move(verts), std::move(edges));
}

/* true iff M^{-1} is negative definite on the span of vertices with
 * degree > 2 (vacuously true when there are none). */
inline bool weak_negativity(const PlumbingGraph &g)
{
	Matrix m = g.adjacency();
	if (m.determinant() == 0)
		throw std::domain_error("adjacency matrix singular");
	std::vector<std::size_t> high;
	for (std::size_t i = 0; i < g.size(); ++i)
		if (g.degree(i) > 2) high.push_back(i);
	if (high.empty()) return true;
	Matrix sub = m.inverse().principal_submatrix(high);
	Inertia in = inertia(sub);
	return in.positives == 0 && in.zeros == 0;
}

/* Spin^c label: a representative of (2Z^n + delta)/(2MZ^n), canonicalized
 * to the fundamental parallelepiped of 2M via Smith coordinates. */
struct SpincLabel {
	std::vector<Int> a;
	std::vector<int> delta;
};

class SpincStructure {
public:
	explicit SpincStructure(const PlumbingGraph &g)
	    : delta_(g.parity_vector())
	{
		Matrix m = g.adjacency();
		std::size_t n = g.size();
		std::vector<std::vector<Int>> mi(n, std::vector<Int>(n));
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j) {
				const Rational &e = m(i, j);
				mi[i][j] = num(e); /* adjacency entries are integers */
			}
		snf_ = smith_normal_form(mi);
		det_ = 1;
		for (std::size_t i = 0; i < n; ++i) det_ *= snf_.D[i][i];
		if (det_ == 0)
			throw std::domain_error("adjacency matrix singular");
		/* U^{-1} over Q, integral since U is unimodular */
		Matrix u(n);
		for (std::size_t i = 0; i < n; ++i)
			for (std::size_t j = 0; j < n; ++j)
				u(i, j) = Rational(snf_.U[i][j]);
		uinvq_ = u.inverse();
	}

	Int det_abs() const { return abs(det_); }
	const std::vector<int> &delta() const { return delta_; }

	/* All |det M| labels, in lexicographic Smith-coordinate order. */
	std::vector<SpincLabel> labels() const
	{
		std::size_t n = delta_.size();
		std::vector<SpincLabel> out;
		std::vector<Int> z(n, 0);
		while (true) {
			out.push_back(from_smith(z));
			std::size_t i = 0;
			for (; i < n; ++i) {
				z[i] += 1;
				if (z[i] < abs(snf_.D[i][i])) break;
				z[i] = 0;
			}
			if (i == n) break;
		}
		return out;
	}

	/* Canonical representative of the class of a (a = delta mod 2). */
	SpincLabel canonical(const std::vector<Int> &a) const
	{
		std::size_t n = delta_.size();
		std::vector<Int> z(n, 0);
		for (std::size_t i = 0; i < n; ++i) {
			Int xi = (a[i] - delta_[i]);
			if (xi % 2 != 0)
				throw std::domain_error("label parity mismatch");
		}
		/* z = U (a - delta)/2 mod D */
		for (std::size_t i = 0; i < n; ++i) {
			Int s = 0;
			for (std::size_t j = 0; j < n; ++j)
				s += snf_.U[i][j] * ((a[j] - delta_[j]) / 2);
			Int d = abs(snf_.D[i][i]);
			s %= d;
			if (s < 0) s += d;
			z[i] = s;
		}
		return from_smith(z);
	}

	bool equivalent(const std::vector<Int> &a, const std::vector<Int> &b) const
	{
		return canonical(a).a == canonical(b).a;
	}

	/* The label with a = delta (exists for every graph). */
	SpincLabel label_of_delta() const
	{
		std::vector<Int> d(delta_.begin(), delta_.end());
		return canonical(d);
	}

private:
	SpincLabel from_smith(const std::vector<Int> &z) const
	{
		std::size_t n = delta_.size();
		SpincLabel l;
		l.delta = delta_;
		l.a.resize(n);
		for (std::size_t i = 0; i < n; ++i) {
			Rational s = 0;
			for (std::size_t j = 0; j < n; ++j)
				s += uinvq_(i, j) * Rational(z[j]);
			l.a[i] = delta_[i] + 2 * num(s); /* s is integral */
		}
		return l;
	}

	std::vector<int> delta_;
	SmithForm snf_;
	Int det_;
	Matrix uinvq_;
};

inline std::vector<SpincLabel> spinc_labels(const PlumbingGraph &g)
{
	return SpincStructure(g).labels();
}

/* The closed-form parameters of a four-node three-star graph with
 * unimodular, weakly negative adjacency matrix. Vertex 0 of the stored
 * vectors is the degree-3 vertex; the three legs keep their input order. */
struct ThreeStarData {
	Rational m;
	std::array<Rational, 4> b;
	std::array<Rational, 4> c;
	Rational d;
	Rational c_pref; /* d + (3 sigma - sum lambda)/4 */
	int sign;	 /* (-1)^pi */
	Matrix A;	 /* -M^{-1}/2, in star order */
	Inertia inert;	 /* of M */
	Rational lambda_sum;
};

inline ThreeStarData three_star_params(const PlumbingGraph &g)
{
	if (g.size() != 4)
		throw std::domain_error("three_star_params: graph must have four vertices");
	std::size_t center = 4;
	int ones = 0;
	for (std::size_t i = 0; i < 4; ++i) {
		int d = g.degree(i);
		if (d == 3) center = i;
		else if (d == 1) ++ones;
	}
	if (center == 4 || ones != 3)
		throw std::domain_error("three_star_params: not a three-star graph");
	Matrix m = g.adjacency();
	Rational det = m.determinant();
	if (det != 1 && det != -1)
		throw std::domain_error("three_star_params: adjacency matrix not unimodular");
	if (!weak_negativity(g))
		throw std::domain_error("three_star_params: graph not weakly negative");

	/* reorder so the degree-3 vertex sits first */
	std::vector<std::size_t> perm{center};
	for (std::size_t i = 0; i < 4; ++i)
		if (i != center) perm.push_back(i);
	Matrix inv = m.inverse();
	ThreeStarData t;
	t.A = Matrix(4);
	for (std::size_t i = 0; i < 4; ++i)
		for (std::size_t j = 0; j < 4; ++j)
			t.A(i, j) = -inv(perm[i], perm[j]) / 2;

	t.m = 2 * t.A(0, 0);
	Rational colsum = t.A(1, 0) + t.A(2, 0) + t.A(3, 0);
	t.b[0] = 2 * colsum;
	for (std::size_t i = 1; i <= 3; ++i)
		t.b[i] = 4 * t.A(i, 0) - 2 * colsum;
	t.c[0] = t.A(1, 2) + t.A(2, 3) + t.A(3, 1) +
		 (t.A(1, 1) + t.A(2, 2) + t.A(3, 3)) / 2;
	for (std::size_t i = 1; i <= 3; ++i) {
		Rational off = 0;
		for (std::size_t j = 1; j <= 3; ++j)
			if (j != i) off += t.A(i, j);
		t.c[i] = t.c[0] - 2 * off;
	}
	t.d = -t.b[0] * t.b[0] / (4 * t.m) + t.c[0];
	for (std::size_t j = 1; j <= 3; ++j) {
		Rational dj = -t.b[j] * t.b[j] / (4 * t.m) + t.c[j];
		if (dj != t.d)
			throw std::domain_error("three_star_params: d_j values disagree");
	}
	t.inert = inertia(m);
	t.lambda_sum = 0;
	for (std::size_t i = 0; i < 4; ++i) t.lambda_sum += Rational(g.weight(i));
	t.c_pref = t.d + (3 * Rational(t.inert.signature()) - t.lambda_sum) / 4;
	t.sign = (t.inert.positives % 2 == 0) ? 1 : -1;
	return t;
}

} // namespace zhat
