/* Acceptance gate: eight checks, one verdict line each, nonzero exit if
 * any fails.  Check 6 currently fails and is reported with the measured
 * discrepancy rather than a loosened tolerance. */

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "zhat/indefinite.hpp"
#include "zhat/modular.hpp"
#include "zhat/surgery.hpp"
#include "zhat/zhat.hpp"

using namespace zhat;

namespace {

PlumbingGraph brieskorn_2_3_7()
{
	return PlumbingGraph({{0, -1}, {1, -2}, {2, -3}, {3, -7}},
			     {{0, 1}, {0, 2}, {0, 3}});
}

std::vector<Int> delta_label(const PlumbingGraph &g)
{
	return SpincStructure(g).label_of_delta().a;
}

struct Verdict {
	bool pass;
	std::string detail;
};

int failures = 0;

void report(int idx, const std::string &name, const Verdict &v, double secs)
{
	if (!v.pass) ++failures;
	std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n",
		    v.pass ? "PASS" : "FAIL", idx, name.c_str(), secs,
		    v.detail.empty() ? "" : " -- ", v.detail.c_str());
	std::fflush(stdout);
}

template <typename F> void run(int idx, const std::string &name, F &&f)
{
	auto t0 = std::chrono::steady_clock::now();
	Verdict v;
	try {
		v = f();
	} catch (const std::exception &e) {
		v = {false, std::string("exception: ") + e.what()};
	}
	double secs = std::chrono::duration<double>(
			  std::chrono::steady_clock::now() - t0)
			  .count();
	report(idx, name, v, secs);
}

/* --- 1: golden false-side series by both engines --------------------- */

Verdict check_golden_false_side()
{
	PlumbingGraph g = brieskorn_2_3_7();
	Rational order(101, 2);
	QSeries a = zhat_negative_definite(g, delta_label(g), order);
	QSeries b = zhat_three_star(g, order);
	if (!(a.order() == b.order() && a.terms() == b.terms()))
		return {false, "engine outputs differ"};
	std::map<Rational, Rational> printed{
	    {Rational(1, 2), 1},  {Rational(3, 2), -1}, {Rational(11, 2), -1},
	    {Rational(21, 2), 1}, {Rational(23, 2), -1}};
	for (auto &[e, c] : printed) {
		auto it = a.terms().find(e);
		if (it == a.terms().end() || it->second != c)
			return {false, "printed term q^" + to_string(e) + " wrong"};
	}
	for (auto &[e, c] : a.terms())
		if (e < Rational(21, 2) && printed.count(e) == 0)
			return {false, "spurious term q^" + to_string(e)};
	return {true, "both engines, exact through q^" + to_string(order)};
}

/* --- 2: closed-form parameter extraction ------------------------------ */

Verdict check_parameters()
{
	ThreeStarData t = three_star_params(brieskorn_2_3_7());
	if (t.m != 42) return {false, "m != 42"};
	std::multiset<std::pair<Rational, Rational>> got, want{
	    {1, 1}, {-13, 5}, {-29, 21}, {41, 41}};
	for (std::size_t j = 0; j < 4; ++j) got.emplace(t.b[j], 4 * t.c[j]);
	if (got != want) return {false, "(b_j, 4c_j) pairs wrong"};
	if (t.d != Rational(41, 168)) return {false, "d wrong"};
	if (t.c_pref != Rational(83, 168))
		return {false, "prefactor exponent wrong"};
	for (std::size_t j = 0; j < 4; ++j)
		if (-t.b[j] * t.b[j] / (4 * t.m) + t.c[j] != t.d)
			return {false, "per-leg d inconsistent"};
	return {true, "m=42, d=41/168, prefactor 83/168"};
}

/* --- 3: golden mock-side series --------------------------------------- */

Verdict check_golden_mock_side()
{
	Rational order(201, 2);
	QSeries z = zhat_reversed(brieskorn_2_3_7(), order);
	QSeries ref = mock_F0_reference(Rational(101)).shifted(Rational(-1, 2));
	Rational common = std::min(z.order(), ref.order());
	if (!(z.truncated(common).terms() == ref.truncated(common).terms()))
		return {false, "mismatch against the q-hypergeometric sum"};
	std::array<long, 8> printed{1, 1, 0, 1, 1, 1, 0, 2};
	for (long k = 0; k < 8; ++k) {
		Rational e = Rational(k) - Rational(1, 2);
		auto it = z.terms().find(e);
		Rational c = it == z.terms().end() ? Rational(0) : it->second;
		if (c != Rational(printed[std::size_t(k)]))
			return {false, "printed coefficient at q^" + to_string(e) +
					   " wrong"};
	}
	return {true, "matches the independent series through q^" +
			  to_string(common)};
}

/* --- 4: surgery cross-check ------------------------------------------- */

Verdict check_surgery()
{
	SurgeryResult r = surgery_zhat(figure_eight_FK(), SurgerySlope(-1, 1),
				       0, Rational(13));
	if (r.guaranteed_order < Rational(12))
		return {false, "guaranteed order below q^11 span"};
	auto normalize = [](const QSeries &s) {
		Rational e0 = s.terms().begin()->first;
		int sg = s.terms().begin()->second > 0 ? 1 : -1;
		return std::make_pair(s.shifted(-e0, Rational(sg)), sg);
	};
	auto [ns, s1] = normalize(r.series);
	std::array<long, 12> printed{1, 1, 0, 1, 1, 1, 0, 2, 1, 2, 1, 2};
	for (long k = 0; k < 12; ++k) {
		auto it = ns.terms().find(Rational(k));
		Rational c = it == ns.terms().end() ? Rational(0) : it->second;
		if (c != Rational(printed[std::size_t(k)]))
			return {false, "normalized q^" + std::to_string(k) +
					   " coefficient wrong"};
	}
	QSeries rev = zhat_reversed(brieskorn_2_3_7(), Rational(25, 2));
	auto [nr, s2] = normalize(-rev);
	Rational common = std::min(ns.order(), nr.order());
	if (!(ns.truncated(common).terms() == nr.truncated(common).terms()))
		return {false, "does not match the negated reversed series"};
	return {true, "guaranteed q^" + to_string(r.guaranteed_order) +
			  ", matches reversed engine up to sign"};
}

/* --- 5: decomposition identity suite ----------------------------------- */

Verdict check_decomposition_suite()
{
	Rational order(50);
	long cases = 0;
	for (long m = 1; m <= 20; ++m) {
		for (long j = -4 * m; j < 4 * m; ++j) {
			auto [f, p] = F_and_p(Rational(j), Rational(m), order);
			QSeries theta = false_theta(Int(m), Int(j), order).series;
			QSeries rhs = theta + p;
			if (!(f.truncated(rhs.order()).terms() ==
			      rhs.truncated(f.order()).terms()))
				return {false, "m=" + std::to_string(m) +
						   " j=" + std::to_string(j)};
			++cases;
		}
	}
	return {true, std::to_string(cases) + " (m, j) pairs exact to q^50"};
}

/* --- 6: radial limit at the pinned coarse grid ------------------------- */

Verdict check_radial_coarse_grid()
{
	QSeries z = zhat_three_star(brieskorn_2_3_7(), Rational(2048));
	QSeries g = z.shifted(Rational(-83, 168)); /* remove the prefactor */
	std::vector<Rational> grid{Rational(1, 10), Rational(1, 20),
				   Rational(1, 40)};
	auto co = asymptotic_coeffs(sigma237_sign_pattern(), 42, 1);
	RadialReport rep = radial_extrapolate(g, 0, grid, 160);
	auto fit = radial_poly_coeffs(g, 0, grid, 160);
	double c0 = Real(sqrt(fit[0].abs2())).convert_to<double>();
	double c1err = std::abs(Real(fit[1].re - co[1].numeric())
				     .convert_to<double>());
	std::vector<Rational> grid2{Rational(1, 12), Rational(1, 24),
				    Rational(1, 48)};
	RadialReport rep2 = radial_extrapolate(g, 0, grid2, 160);
	double spread = Real(sqrt((rep.extrapolant - rep2.extrapolant).abs2()))
			    .convert_to<double>();
	double allowed =
	    Real(rep.error_estimate + rep2.error_estimate).convert_to<double>();
	bool grids_ok = spread <= 2 * allowed + 1e-12;
	std::ostringstream os;
	os.precision(3);
	os << "|const|=" << c0 << ", |slope err|=" << c1err
	   << " vs tolerance 1e-6 (grid spacing too coarse for the divergent "
	      "tail); disjoint-grid spread "
	   << spread << (grids_ok ? " within" : " outside") << " reported error";
	bool pass = c0 < 1e-6 && c1err < 1e-6 && grids_ok;
	return {pass, os.str()};
}

/* --- 7: oracle suites --------------------------------------------------- */

Verdict check_oracles()
{
	if (!oracles::run_lattice_box_trials(500))
		return {false, "lattice enumeration disagrees with box oracle"};
	if (!oracles::run_inertia_trials(500))
		return {false, "inertia disagrees with sign-variation oracle"};
	if (!oracles::run_ring_axiom_trials(1000))
		return {false, "series ring axiom violated"};
	IndefThetaSpec sp = make_indef_spec(three_star_params(brieskorn_2_3_7()));
	if (!oracles::rho_boundary_clear(sp, Rational(100)))
		return {false, "regularizer hits a sign boundary"};
	return {true, "500 box + 500 inertia + 1000 ring trials, boundary "
		      "clear to q^100"};
}

/* --- 8: CLI determinism -------------------------------------------------- */

std::pair<int, std::string> capture(const std::string &cmd)
{
	std::string out;
	FILE *p = popen((cmd + " 2>&1").c_str(), "r");
	if (!p) return {-1, out};
	char buf[4096];
	std::size_t n;
	while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
	return {pclose(p), out};
}

Verdict check_cli_determinism()
{
	const std::string cli = ZHAT_CLI_PATH;
	const std::string data = ZHAT_DATA_DIR;
	const std::string graph = data + "/sigma237.plumb.json";
	const std::string knot = data + "/figure_eight.knot.json";
	std::vector<std::string> cmds{
	    cli + " compute --graph " + graph + " --order 51/2 --cross-check",
	    cli + " compute --graph " + graph + " --order 30 --format json",
	    cli + " reversed --graph " + graph + " --order 25/2 --against-surgery",
	    cli + " surgery --graph " + knot + " --slope -1 --order 13",
	    cli + " params --graph " + graph + " --format json",
	    cli + " falsetheta --modulus 42 --residue 1 --order 40 --format csv",
	    cli + " radial --graph " + graph + " --order 40 --tgrid 1/4,1/8",
	};
	for (auto &cmd : cmds) {
		auto [rc1, out1] = capture(cmd);
		auto [rc2, out2] = capture(cmd);
		if (rc1 != 0)
			return {false, "nonzero exit: " + cmd};
		if (rc1 != rc2 || out1 != out2)
			return {false, "output differs between runs: " + cmd};
	}
	/* parallelism degree must not change a single byte */
	for (const std::string base :
	     {cli + " compute --graph " + graph + " --order 51/2",
	      cli + " radial --graph " + graph + " --order 40 --tgrid 1/4,1/8"}) {
		auto [rc1, out1] = capture(base + " --jobs 1");
		auto [rc4, out4] = capture(base + " --jobs 4");
		if (rc1 != 0 || rc4 != 0)
			return {false, "nonzero exit: " + base};
		if (out1 != out4)
			return {false, "jobs 1 vs 4 outputs differ: " + base};
	}
	return {true, "7 commands byte-stable, jobs 1 == jobs 4"};
}

} // namespace

int main()
{
	run(1, "golden series, direct and closed-form engines",
	    check_golden_false_side);
	run(2, "closed-form parameter extraction", check_parameters);
	run(3, "reversed-orientation series vs independent mock sum",
	    check_golden_mock_side);
	run(4, "surgery series vs reversed engine", check_surgery);
	run(5, "periodic-plus-polynomial decomposition suite",
	    check_decomposition_suite);
	run(6, "radial limit constants on the coarse grid",
	    check_radial_coarse_grid);
	run(7, "independent oracle suites", check_oracles);
	run(8, "CLI byte determinism", check_cli_determinism);
	if (failures)
		std::printf("%d of 8 criteria failing\n", failures);
	else
		std::printf("all 8 criteria passing\n");
	return failures == 0 ? 0 : 1;
}
