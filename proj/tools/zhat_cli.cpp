#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "zhat/false_theta.hpp"
#include "zhat/indefinite.hpp"
#include "zhat/modular.hpp"
#include "zhat/plumbing.hpp"
#include "zhat/serialize.hpp"
#include "zhat/surgery.hpp"
#include "zhat/zhat.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPrecondition = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
	using std::runtime_error::runtime_error;
};

nlohmann::json load_json(const std::string &path)
{
	std::ifstream in(path);
	if (!in) throw IoError("cannot open " + path);
	nlohmann::json doc;
	try {
		in >> doc;
	} catch (const nlohmann::json::parse_error &e) {
		throw IoError("cannot parse " + path + ": " + e.what());
	}
	return doc;
}

zhat::PlumbingGraph load_graph(const std::string &path)
{
	return zhat::parse_plumbing(load_json(path));
}

void print_series(const zhat::QSeries &s, const std::string &format)
{
	using zhat::to_string;
	if (format == "json") {
		std::cout << zhat::qseries_to_json(s).dump() << "\n";
		return;
	}
	if (format == "csv") {
		std::cout << "exponent,coefficient\n";
		for (auto &[e, c] : s.terms())
			std::cout << to_string(e) << "," << to_string(c) << "\n";
		std::cout << "order," << to_string(s.order()) << "\n";
		return;
	}
	for (auto &[e, c] : s.terms())
		std::cout << to_string(e) << "\t" << to_string(c) << "\n";
	std::cout << "order\t" << to_string(s.order()) << "\n";
}

std::pair<zhat::Int, zhat::Int> parse_slope(const std::string &s)
{
	auto pos = s.find('/');
	if (pos == std::string::npos)
		return {zhat::Int(s), zhat::Int(1)};
	return {zhat::Int(s.substr(0, pos)), zhat::Int(s.substr(pos + 1))};
}

std::array<zhat::Rational, 4> parse_cone(const std::string &s)
{
	auto semi = s.find(';');
	if (semi == std::string::npos)
		throw std::domain_error("cone: expected \"c1,c2;c1',c2'\"");
	auto pair_of = [](const std::string &half) {
		auto comma = half.find(',');
		if (comma == std::string::npos)
			throw std::domain_error("cone: expected two components");
		return std::make_pair(
		    zhat::parse_rational(half.substr(0, comma)),
		    zhat::parse_rational(half.substr(comma + 1)));
	};
	auto [a, b] = pair_of(s.substr(0, semi));
	auto [c, d] = pair_of(s.substr(semi + 1));
	return {a, b, c, d};
}

std::vector<zhat::Rational> parse_grid(const std::string &s)
{
	std::vector<zhat::Rational> out;
	std::size_t pos = 0;
	while (pos <= s.size()) {
		auto comma = s.find(',', pos);
		std::string tok = s.substr(
		    pos, comma == std::string::npos ? std::string::npos
						    : comma - pos);
		if (!tok.empty()) out.push_back(zhat::parse_rational(tok));
		if (comma == std::string::npos) break;
		pos = comma + 1;
	}
	return out;
}

std::string real_str(const zhat::Real &r) { return r.str(25); }

void print_report(const zhat::RadialReport &rep, const std::string &format)
{
	using zhat::to_string;
	if (format == "json") {
		nlohmann::ordered_json doc;
		doc["x"] = to_string(rep.x);
		doc["rows"] = nlohmann::json::array();
		for (std::size_t i = 0; i < rep.tgrid.size(); ++i)
			doc["rows"].push_back({{"t", to_string(rep.tgrid[i])},
					       {"re", real_str(rep.values[i].re)},
					       {"im", real_str(rep.values[i].im)}});
		doc["extrapolant_re"] = real_str(rep.extrapolant.re);
		doc["extrapolant_im"] = real_str(rep.extrapolant.im);
		doc["error_estimate"] = real_str(rep.error_estimate);
		std::cout << doc.dump() << "\n";
		return;
	}
	std::cout << "t,Re,Im,extrapolant,error_estimate\n";
	for (std::size_t i = 0; i < rep.tgrid.size(); ++i) {
		std::cout << to_string(rep.tgrid[i]) << ","
			  << real_str(rep.values[i].re) << ","
			  << real_str(rep.values[i].im) << ",";
		if (i == 0)
			std::cout << real_str(rep.extrapolant.re) << "+"
				  << real_str(rep.extrapolant.im) << "i"
				  << "," << real_str(rep.error_estimate);
		else
			std::cout << ",";
		std::cout << "\n";
	}
}

/* Normalize to leading coefficient +1 at exponent 0: returns the factored
 * (min exponent, leading coefficient sign) alongside the series. */
struct Normalized {
	zhat::QSeries series{zhat::Rational(1)};
	zhat::Rational min_exp = 0;
	int sign = 1;
};

Normalized normalize(const zhat::QSeries &s)
{
	Normalized n;
	if (s.terms().empty()) {
		n.series = zhat::QSeries(s.order());
		return n;
	}
	n.min_exp = s.terms().begin()->first;
	n.sign = s.terms().begin()->second > 0 ? 1 : -1;
	n.series = zhat::QSeries(s.order() - n.min_exp);
	for (auto &[e, c] : s.terms())
		n.series.add_term(e - n.min_exp, n.sign * c);
	return n;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"exact q-series invariants of plumbed three-manifolds"};
	app.require_subcommand(1);

	std::string graph_path, format = "plain", order_str = "12";
	std::string slope_str = "-1", cone_str, x_str = "0";
	std::string tgrid_str = "1/10,1/20,1/40";
	std::string modulus_str = "2", residue_str = "1";
	unsigned precision = 128;
	int jobs = 1;
	long spinc_index = -1;
	bool cross_check = false, against_surgery = false;

	auto add_common = [&](CLI::App *sub, bool needs_graph) {
		auto *g = sub->add_option("--graph", graph_path, "input file");
		if (needs_graph) g->required();
		sub->add_option("--order", order_str, "truncation order (rational)");
		sub->add_option("--format", format, "json|csv|plain")
		    ->check(CLI::IsMember({"json", "csv", "plain"}));
		sub->add_option("--precision", precision, "mantissa bits");
		sub->add_option("--jobs", jobs, "parallelism degree");
	};

	auto *c_compute = app.add_subcommand("compute", "Z-hat of a plumbing graph");
	add_common(c_compute, true);
	c_compute->add_option("--spinc", spinc_index, "spin-c label index");
	c_compute->add_flag("--cross-check", cross_check,
			    "compare lattice and closed-form engines");

	auto *c_rev = app.add_subcommand("reversed",
					 "Z-hat of the orientation reversal");
	add_common(c_rev, true);
	c_rev->add_option("--cone", cone_str, "timelike pair \"c1,c2;c1',c2'\"");
	c_rev->add_flag("--against-surgery", against_surgery,
			"diff against the figure-eight surgery series");

	auto *c_surg = app.add_subcommand("surgery", "Dehn surgery on a knot");
	add_common(c_surg, true);
	c_surg->add_option("--slope", slope_str, "surgery coefficient p/r");
	c_surg->add_option("--spinc", spinc_index, "selection label a");

	auto *c_rad = app.add_subcommand("radial", "radial limit report");
	add_common(c_rad, true);
	c_rad->add_option("--x", x_str, "rational cusp h/k");
	c_rad->add_option("--tgrid", tgrid_str, "comma-separated t values");

	auto *c_par = app.add_subcommand("params", "three-star closed-form data");
	add_common(c_par, true);

	auto *c_ft = app.add_subcommand("falsetheta", "false theta series");
	add_common(c_ft, false);
	c_ft->add_option("--modulus", modulus_str, "modulus m");
	c_ft->add_option("--residue", residue_str, "residue r");

	CLI11_PARSE(app, argc, argv);

	try {
		using namespace zhat;
		Rational order = parse_rational(order_str);
		if (order <= 0) {
			std::cout << "error: order must be positive\n";
			return kExitPrecondition;
		}
		if (jobs < 1) {
			std::cout << "error: jobs must be at least 1\n";
			return kExitPrecondition;
		}

		if (c_compute->parsed()) {
			PlumbingGraph g = load_graph(graph_path);
			auto labels = spinc_labels(g);
			std::vector<Int> a;
			if (spinc_index >= 0) {
				if (std::size_t(spinc_index) >= labels.size()) {
					std::cout << "error: spin-c index out "
						     "of range (have "
						  << labels.size() << ")\n";
					return kExitPrecondition;
				}
				a = labels[std::size_t(spinc_index)].a;
			} else {
				a = SpincStructure(g).label_of_delta().a;
			}
			QSeries s = zhat_negative_definite(g, a, order, jobs);
			print_series(s, format);
			if (cross_check) {
				QSeries alt = zhat_three_star(g, order);
				if (!s.agrees_with(alt)) {
					Rational bad = 0;
					for (auto &[e, c] : s.terms()) {
						auto it = alt.terms().find(e);
						if (it == alt.terms().end() ||
						    it->second != c) {
							bad = e;
							break;
						}
					}
					std::cout << "cross-check mismatch at q^"
						  << to_string(bad) << "\n";
					return kExitMismatch;
				}
				std::cout << "engines agree to q^"
					  << to_string(order) << "\n";
			}
			return kExitOk;
		}

		if (c_rev->parsed()) {
			PlumbingGraph g = load_graph(graph_path);
			QSeries s{Rational(1)};
			try {
				if (cone_str.empty()) {
					s = zhat_reversed(g, order);
				} else {
					auto cv = parse_cone(cone_str);
					IndefThetaSpec custom;
					custom.cvec = {cv[0], cv[1]};
					custom.cprime = {cv[2], cv[3]};
					s = zhat_reversed(g, order, &custom);
				}
			} catch (const std::domain_error &e) {
				std::string msg = e.what();
				if (msg.rfind("three_star_params", 0) == 0) {
					std::cout << "error: three-star "
						     "four-node unimodular "
						     "required\n";
					return kExitPrecondition;
				}
				throw;
			}
			print_series(s, format);
			if (against_surgery) {
				auto res = surgery_zhat(figure_eight_FK(),
							SurgerySlope(-1, 1), 0,
							order);
				Normalized a = normalize(res.series);
				Normalized b = normalize(s);
				if (!a.series.agrees_with(b.series)) {
					std::cout << "surgery mismatch\n";
					return kExitMismatch;
				}
				Rational last = std::min(a.series.order(),
							 b.series.order());
				Int through = rceil(last) - 1;
				int relsign = a.sign * b.sign;
				std::cout << "match through q^" << through.str()
					  << " (sign "
					  << (relsign > 0 ? "+1" : "-1")
					  << ")\n";
			}
			return kExitOk;
		}

		if (c_surg->parsed()) {
			KnotSeries K = parse_knot(load_json(graph_path));
			auto [p, r] = parse_slope(slope_str);
			Int a = spinc_index >= 0 ? Int(spinc_index) : Int(0);
			auto res = surgery_zhat(K, SurgerySlope(p, r), a, order);
			print_series(res.series, format);
			std::cout << "guaranteed order\t"
				  << to_string(res.guaranteed_order) << "\n";
			return kExitOk;
		}

		if (c_rad->parsed()) {
			PlumbingGraph g = load_graph(graph_path);
			auto a = SpincStructure(g).label_of_delta().a;
			QSeries s = zhat_negative_definite(g, a, order, jobs);
			auto grid = parse_grid(tgrid_str);
			auto rep = radial_extrapolate(s, parse_rational(x_str),
						      grid, precision);
			print_report(rep, format);
			return kExitOk;
		}

		if (c_par->parsed()) {
			PlumbingGraph g = load_graph(graph_path);
			ThreeStarData t;
			try {
				t = three_star_params(g);
			} catch (const std::domain_error &e) {
				std::string msg = e.what();
				if (msg.rfind("three_star_params", 0) == 0) {
					std::cout << "error: three-star "
						     "four-node unimodular "
						     "required\n";
					return kExitPrecondition;
				}
				throw;
			}
			if (format == "json") {
				nlohmann::ordered_json doc;
				doc["m"] = to_string(t.m);
				for (int j = 0; j < 4; ++j) {
					doc["b"].push_back(to_string(t.b[j]));
					doc["c"].push_back(to_string(t.c[j]));
				}
				doc["d"] = to_string(t.d);
				doc["prefactor_exponent"] = to_string(t.c_pref);
				doc["sign"] = t.sign;
				std::cout << doc.dump() << "\n";
			} else {
				std::cout << "m\t" << to_string(t.m) << "\n";
				for (int j = 0; j < 4; ++j)
					std::cout << "b" << j << "\t"
						  << to_string(t.b[j]) << "\tc"
						  << j << "\t"
						  << to_string(t.c[j]) << "\n";
				std::cout << "d\t" << to_string(t.d) << "\n"
					  << "prefactor_exponent\t"
					  << to_string(t.c_pref) << "\n"
					  << "sign\t" << t.sign << "\n";
			}
			return kExitOk;
		}

		if (c_ft->parsed()) {
			Int m(modulus_str);
			Int r(residue_str);
			auto ft = false_theta(m, r, order);
			print_series(ft.series, format);
			return kExitOk;
		}
	} catch (const IoError &e) {
		std::cout << "error: " << e.what() << "\n";
		return kExitIo;
	} catch (const zhat::ParseError &e) {
		std::cout << "error: " << e.what() << "\n";
		return kExitIo;
	} catch (const std::exception &e) {
		std::cout << "error: " << e.what() << "\n";
		return kExitPrecondition;
	}
	return kExitOk;
}
