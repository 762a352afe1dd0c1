#pragma once

// JSON forms of networks, schemes and solver reports. Rationals are always
// strings "p" or "p/q"; with `decimal` each gets a "<key>_decimal" sibling.

#include <string>
#include <string_view>

#include "json.hpp"

#include "gdof/bc_bounds.hpp"
#include "gdof/schemes.hpp"
#include "gdof/tin_solver.hpp"

namespace gdof {

using json = nlohmann::ordered_json;

struct JsonOptions {
    bool decimal = false;
};

void put_rational(json& obj, const std::string& key, const Rational& v, const JsonOptions& opt);

json network_to_json(const ChannelMatrix& m);
/// Pretty-printed canonical network file.
std::string network_to_text(const ChannelMatrix& m);

json regime_json(const RegimeReport& r, const JsonOptions& opt = {});
json ptin_json(const PtinResult& r, const JsonOptions& opt = {});
json oracle_json(const OracleResult& r, const UserSet& s, const JsonOptions& opt = {});
json tina_json(const TinaResult& r, const JsonOptions& opt = {});
json verdict_json(const PtinVerdict& v, const JsonOptions& opt = {});
json bound_json(const BcBoundReport& r, const JsonOptions& opt = {});
json scheme_json(const LayeredScheme& s);
json scheme_verdict_json(const SchemeVerdict& v, const JsonOptions& opt = {});
json ratio_json(const RatioReport& r, const JsonOptions& opt = {});
json gdof_point_json(const GdofPoint& d, const JsonOptions& opt = {});

/// Scheme file: {"messages":[{"id","antennas","power","gdof","audience"}], "decode_order":{"1":[ids]}}.
LayeredScheme parse_scheme(std::string_view text);

/// Comma-separated exact numbers, one per user: "1/2,0,1/2".
GdofPoint parse_gdof_point(std::string_view text);

}  // namespace gdof
