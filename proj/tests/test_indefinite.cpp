#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "zhat/indefinite.hpp"

using namespace zhat;

namespace {

PlumbingGraph brieskorn_2_3_7()
{
	return PlumbingGraph({{0, -1}, {1, -2}, {2, -3}, {3, -7}},
			     {{0, 1}, {0, 2}, {0, 3}});
}

IndefThetaSpec spec_2_3_7()
{
	return make_indef_spec(three_star_params(brieskorn_2_3_7()));
}

} // namespace

TEST_CASE("twelfth-root phase ring")
{
	/* zeta^6 = -1, zeta^12 = 1, zeta^2 - zeta^4 = 1 */
	Cyclotomic12 z6 = Cyclotomic12::zeta_pow(6);
	Cyclotomic12 r = z6 * z6;
	REQUIRE(r.is_rational());
	REQUIRE(r.rational_value() == Rational(1));
	Cyclotomic12 s = Cyclotomic12::zeta_pow(2);
	s += Cyclotomic12::zeta_pow(4).scaled(-1);
	REQUIRE(s.rational_value() == Rational(1));
	Cyclotomic12 t = z6;
	t += Cyclotomic12::rational(1);
	REQUIRE(t.rational_value() == Rational(0));
	REQUIRE_FALSE(Cyclotomic12::zeta_pow(1).is_rational());
	REQUIRE_THROWS_AS(Cyclotomic12::zeta_pow(3).rational_value(),
			  std::domain_error);
	/* (zeta + zeta^{-1}) is sqrt(3): its square is rational 3 */
	Cyclotomic12 c = Cyclotomic12::zeta_pow(1);
	c += Cyclotomic12::zeta_pow(11);
	REQUIRE((c * c).rational_value() == Rational(3));
}

TEST_CASE("cone regularizer values")
{
	IndefThetaSpec sp = spec_2_3_7();
	/* inside the support stripe */
	REQUIRE(rho_regularizer({1, Rational(17, 6)}, sp) == Rational(-1));
	REQUIRE(rho_regularizer({-1, Rational(17, 6)}, sp) == Rational(-1));
	/* outside: both pairings negative */
	REQUIRE(rho_regularizer({1, Rational(-1, 6)}, sp) == Rational(0));
	/* far above the stripe on the other side */
	REQUIRE(rho_regularizer({Rational(1, 42), Rational(5, 6)}, sp) ==
		Rational(-1));
	/* support condition is scale invariant */
	REQUIRE(rho_regularizer({3, Rational(17, 2)}, sp) == Rational(-1));
}

TEST_CASE("regularizer support never touches the sign boundary")
{
	REQUIRE(oracles::rho_boundary_clear(spec_2_3_7(), Rational(101, 2)));
}

TEST_CASE("indefinite theta has odd integer w-exponents")
{
	WLaurentQSeries th = vartheta_indefinite(spec_2_3_7(), Rational(8));
	REQUIRE_FALSE(th.terms().empty());
	for (auto &[w, s] : th.terms()) {
		REQUIRE(den(w) == 1);
		REQUIRE(num(w) % 2 != 0);
	}
}

TEST_CASE("cone validation rejects bad pairs")
{
	IndefThetaSpec sp = spec_2_3_7();
	sp.cvec = {0, 1}; /* spacelike for this form */
	REQUIRE_THROWS_AS(vartheta_indefinite(sp, Rational(5)),
			  std::domain_error);
	IndefThetaSpec sp2 = spec_2_3_7();
	sp2.cprime = {1, 100}; /* (c',c') > 0 : 3*10000 - 21 */
	REQUIRE_THROWS_AS(vartheta_indefinite(sp2, Rational(5)),
			  std::domain_error);
}

TEST_CASE("reversed-orientation series is the order-7 mock theta")
{
	QSeries z = zhat_reversed(brieskorn_2_3_7(), Rational(31, 2));
	QSeries f0 = mock_F0_reference(Rational(16)).shifted(Rational(-1, 2));
	REQUIRE(z.agrees_with(f0));
	/* spot-check the printed coefficients 1,1,0,1,1,1,0,2 */
	std::vector<long> printed{1, 1, 0, 1, 1, 1, 0, 2};
	for (long k = 0; k < 8; ++k) {
		Rational e = Rational(k) - Rational(1, 2);
		auto it = z.terms().find(e);
		if (printed[static_cast<std::size_t>(k)] == 0)
			REQUIRE(it == z.terms().end());
		else
			REQUIRE(it->second ==
				Rational(printed[static_cast<std::size_t>(k)]));
	}
}

TEST_CASE("reversed engine requires the star closed-form shape")
{
	PlumbingGraph path({{0, -2}, {1, -2}, {2, -2}, {3, -2}},
			   {{0, 1}, {1, 2}, {2, 3}});
	REQUIRE_THROWS_AS(zhat_reversed(path, Rational(5)), std::domain_error);
}

TEST_CASE("mock reference series starts correctly")
{
	/* 1 + q + q^3 + ... : first terms of the q-hypergeometric sum,
	 * computed by hand from the n = 0,1,2 summands */
	QSeries f = mock_F0_reference(Rational(6));
	REQUIRE(f.terms().at(Rational(0)) == Rational(1));
	REQUIRE(f.terms().at(Rational(1)) == Rational(1));
	REQUIRE(f.terms().at(Rational(3)) == Rational(1));
	REQUIRE(f.terms().count(Rational(2)) == 0);
}

TEST_CASE("shadow combination and its termwise integral")
{
	Rational order(30);
	ShadowTheta sh = shadow_theta(order);
	REQUIRE(sh.norm_sq == 168);
	QSeries ei = sh.eichler(order);
	for (auto &[e, c] : sh.raw.terms()) {
		/* raw carries sg * ell at exponent ell^2/168; the integral
		 * carries sg * sgn(ell) */
		Int l2 = num(e * 168);
		Int l = 0;
		while (l * l < l2) ++l;
		REQUIRE(l * l == l2);
		auto it = ei.terms().find(e);
		REQUIRE(it != ei.terms().end());
		REQUIRE(c == it->second * Rational(l));
	}
	/* the sign pattern of the integral matches the plus/minus residues */
	auto it13 = ei.terms().find(Rational(169, 168));
	REQUIRE(it13 != ei.terms().end());
	REQUIRE(it13->second == Rational(-1));
}
