#pragma once

#include <cstdint>
#include <json.hpp>
#include <limits>
#include <stdexcept>

#include "zhat/qseries.hpp"

namespace zhat {

namespace detail {
inline std::int64_t to_i64(const Int &v)
{
	if (v > std::numeric_limits<std::int64_t>::max() ||
	    v < std::numeric_limits<std::int64_t>::min())
		throw std::overflow_error("qseries_to_json: value exceeds int64");
	return v.convert_to<std::int64_t>();
}
} // namespace detail

/* JSON schema: {"den": D, "terms": [[exp_num*D, coeff_num, coeff_den],...],
 * "order": [num, den]}, terms sorted by exponent ascending. D is the lcm of
 * the exponent denominators, so the round trip is bit-exact. */
inline nlohmann::ordered_json qseries_to_json(const QSeries &s)
{
	Int d = 1;
	for (auto &[e, c] : s.terms()) d = lcm(d, den(e));
	nlohmann::ordered_json j;
	j["den"] = detail::to_i64(d);
	auto &arr = j["terms"] = nlohmann::ordered_json::array();
	for (auto &[e, c] : s.terms())
		arr.push_back({detail::to_i64(num(e) * (d / den(e))),
			       detail::to_i64(num(c)), detail::to_i64(den(c))});
	j["order"] = {detail::to_i64(num(s.order())),
		      detail::to_i64(den(s.order()))};
	return j;
}

inline QSeries qseries_from_json(const nlohmann::json &j)
{
	Int d = Int(j.at("den").get<std::int64_t>());
	Rational order(Int(j.at("order").at(0).get<std::int64_t>()),
		       Int(j.at("order").at(1).get<std::int64_t>()));
	QSeries s(order);
	for (auto &t : j.at("terms")) {
		Rational e(Int(t.at(0).get<std::int64_t>()), d);
		Rational c(Int(t.at(1).get<std::int64_t>()),
			   Int(t.at(2).get<std::int64_t>()));
		s.add_term(e, c);
	}
	return s;
}

} // namespace zhat
