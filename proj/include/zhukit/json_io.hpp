#ifndef ZHUKIT_JSON_IO_HPP
#define ZHUKIT_JSON_IO_HPP

#include <zhukit/formal.hpp>
#include <zhukit/fusion.hpp>
#include <zhukit/voa.hpp>

#include <json.hpp>

#include <string>

namespace zhukit {

using Json = nlohmann::ordered_json;

/// Rationals travel as "num/den" strings (or "num" for integers).
std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

Json voa_to_json(const VOAPresentation& voa);
VOAPtr voa_from_json(const Json& j);

/// A module file carries its own basis and table; the VOA is supplied.
Json module_to_json(const ModulePresentation& w);
ModulePresentation module_from_json(const Json& j, const VOAPtr& voa);

Json series_to_json(const ScalarSeries& s);
ScalarSeries series_from_json(const Json& j);
Json rational_form_to_json(const RationalForm& rf);
RationalForm rational_form_from_json(const Json& j);

/// {dim, unit, c:[[i,j,k,"q"],...], theta:[[i,j,"q"],...]}
Json algebra_to_json(const FinAlgebra& a);
FinAlgebra algebra_from_json(const Json& j);
/// {dim, action:[[a,i,j,"q"],...]}
Json fin_module_to_json(const FinModule& m);
FinModule fin_module_from_json(const Json& j, std::size_t algebra_dim);
/// {dim, left:[[a,i,j,"q"],...], right:[...]}
Json fin_bimodule_to_json(const FinBimodule& b);
FinBimodule fin_bimodule_from_json(const Json& j, std::size_t algebra_dim);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace zhukit

#endif  // ZHUKIT_JSON_IO_HPP
