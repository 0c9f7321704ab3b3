#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace cslab::cli {

using Json = nlohmann::ordered_json;

/// Like Json::dump(2) but every floating-point number is printed with
/// 17 significant digits; non-finite values become null.
void write_json(std::ostream& out, const Json& value);
std::string to_json_string(const Json& value);

}  // namespace cslab::cli
