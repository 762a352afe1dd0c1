#include "gdof/serialize.hpp"

#include "gdof/errors.hpp"

namespace gdof {

void put_rational(json& obj, const std::string& key, const Rational& v, const JsonOptions& opt) {
    obj[key] = v.str();
    if (opt.decimal) obj[key + "_decimal"] = v.decimal(6);
}

json network_to_json(const ChannelMatrix& m) {
    json out = json::object();
    if (!m.name().empty()) out["name"] = m.name();
    out["K"] = m.size();
    json rows = json::array();
    for (int i = 1; i <= m.size(); ++i) {
        json row = json::array();
        for (int j = 1; j <= m.size(); ++j) row.push_back(m.alpha(i, j).str());
        rows.push_back(std::move(row));
    }
    out["alpha"] = std::move(rows);
    return out;
}

std::string network_to_text(const ChannelMatrix& m) { return network_to_json(m).dump(2) + "\n"; }

json regime_json(const RegimeReport& r, const JsonOptions& opt) {
    json out = json::object();
    out["in_tin"] = r.in_tin;
    out["in_ctin"] = r.in_ctin;
    out["in_sls"] = r.in_sls;
    out["in_strict_sls"] = r.in_strict_sls;
    out["quantifier_reading"] = std::string(RegimeReport::quantifier_reading);
    json violations = json::array();
    for (const auto& v : r.violations) {
        json e = json::object();
        e["regime"] = std::string(regime_name(v.regime));
        e["triple"] = {v.i, v.j, v.k};
        put_rational(e, "lhs", v.lhs, opt);
        put_rational(e, "rhs", v.rhs, opt);
        e["inequality"] = v.inequality;
        violations.push_back(std::move(e));
    }
    out["violations"] = std::move(violations);
    return out;
}

json ptin_json(const PtinResult& r, const JsonOptions& opt) {
    json out = json::object();
    out["subset"] = r.subset;
    put_rational(out, "value", r.value, opt);
    out["partition"] = r.partition.str();
    out["sls_certified"] = r.sls_certified;
    json lambdas = json::array();
    for (const auto& [c, w] : r.certificate.lambdas) lambdas.push_back({c.str(), w.str()});
    out["lambdas"] = std::move(lambdas);
    out["cover_mode"] = r.certificate.mode == CoverMode::equality ? "equality" : "inequality";
    return out;
}

json gdof_point_json(const GdofPoint& d, const JsonOptions& opt) {
    json out = json::array();
    for (const auto& v : d.d) out.push_back(opt.decimal ? json{v.str(), v.decimal(6)} : json(v.str()));
    return out;
}

json oracle_json(const OracleResult& r, const UserSet& s, const JsonOptions& opt) {
    json out = json::object();
    out["subset"] = s;
    out["feasible"] = r.feasible;
    if (r.feasible) {
        put_rational(out, "value", r.value, opt);
        out["d"] = gdof_point_json(r.d, opt);
    }
    out["constraints"] = r.constraints;
    return out;
}

json tina_json(const TinaResult& r, const JsonOptions& opt) {
    json out = json::object();
    put_rational(out, "value", r.value, opt);
    out["best_subset"] = r.best_subset;
    out["certified"] = r.certified;
    out["result"] = ptin_json(r.result, opt);
    return out;
}

json verdict_json(const PtinVerdict& v, const JsonOptions& opt) {
    json out = json::object();
    out["feasible"] = v.feasible;
    if (v.violated) {
        out["violated"] = v.violated->str();
        put_rational(out, "load", v.load, opt);
        put_rational(out, "bound", v.bound, opt);
        put_rational(out, "slack", v.slack, opt);
    }
    return out;
}

json bound_json(const BcBoundReport& r, const JsonOptions& opt) {
    json out = json::object();
    put_rational(out, "value", r.value, opt);
    out["method"] = std::string(method_name(r.method));
    out["generator"] = r.generator;
    out["witness"] = std::visit([](const auto& w) { return w.str(); }, r.witness);
    if (r.tina) put_rational(out, "tina", *r.tina, opt);
    if (r.chain_bound) put_rational(out, "chain_bound", *r.chain_bound, opt);
    if (!r.trace.empty()) {
        out["stages"] = static_cast<int>(r.trace.size()) - 1;
        json trace = json::array();
        for (const auto& st : r.trace) {
            json e = json::object();
            e["stage"] = st.stage;
            e["S"] = st.users;
            e["partition"] = st.partition.str();
            e["combined"] = st.combined.str();
            e["N"] = st.cycles;
            put_rational(e, "delta_sum", st.delta_sum, opt);
            trace.push_back(std::move(e));
        }
        out["trace"] = std::move(trace);
    }
    return out;
}

json scheme_json(const LayeredScheme& s) {
    json out = json::object();
    if (!s.name.empty()) out["name"] = s.name;
    json messages = json::array();
    for (const auto& w : s.messages) {
        json e = json::object();
        e["id"] = w.id;
        e["antennas"] = w.antennas;
        e["power"] = w.power.str();
        e["gdof"] = w.gdof.str();
        e["audience"] = w.audience;
        messages.push_back(std::move(e));
    }
    out["messages"] = std::move(messages);
    json order = json::object();
    for (const auto& [rx, ids] : s.decode_order) order[std::to_string(rx)] = ids;
    out["decode_order"] = std::move(order);
    return out;
}

json scheme_verdict_json(const SchemeVerdict& v, const JsonOptions& opt) {
    json out = json::object();
    out["ok"] = v.ok;
    put_rational(out, "total", v.total, opt);
    json receivers = json::array();
    for (const auto& r : v.receivers) {
        json e = json::object();
        e["receiver"] = r.receiver;
        e["ok"] = r.ok;
        json steps = json::array();
        for (const auto& st : r.steps) {
            json s = json::object();
            s["id"] = st.id;
            put_rational(s, "level", st.level, opt);
            put_rational(s, "floor", st.floor, opt);
            put_rational(s, "gdof", st.gdof, opt);
            put_rational(s, "slack", st.slack, opt);
            s["ok"] = st.ok;
            steps.push_back(std::move(s));
        }
        e["steps"] = std::move(steps);
        receivers.push_back(std::move(e));
    }
    out["receivers"] = std::move(receivers);
    return out;
}

json ratio_json(const RatioReport& r, const JsonOptions& opt) {
    json out = json::object();
    put_rational(out, "upper", r.upper, opt);
    if (r.lower) put_rational(out, "lower", *r.lower, opt);
    put_rational(out, "tina", r.tina, opt);
    out["bound"] = bound_json(r.bound, opt);
    if (r.scheme) out["scheme"] = scheme_verdict_json(*r.scheme, opt);
    return out;
}

namespace {

Rational number_field(const nlohmann::json& e, const char* key, const std::string& where) {
    if (!e.contains(key) || !e[key].is_string()) {
        throw ParseError(where + ": \"" + key + "\" must be a number-string");
    }
    auto v = Rational::try_parse(e[key].get<std::string>());
    if (!v) throw ParseError(where + ": unparsable " + key + " \"" + e[key].get<std::string>() + "\"");
    return *v;
}

std::vector<User> index_list(const nlohmann::json& e, const char* key, const std::string& where) {
    if (!e.contains(key) || !e[key].is_array()) throw ParseError(where + ": \"" + key + "\" must be an array");
    std::vector<User> out;
    for (const auto& x : e[key]) {
        if (!x.is_number_integer()) throw ParseError(where + ": \"" + key + "\" entries must be integers");
        out.push_back(x.get<int>());
    }
    return out;
}

}  // namespace

LayeredScheme parse_scheme(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed scheme JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("messages") || !doc["messages"].is_array()) {
        throw ParseError("scheme file needs a \"messages\" array");
    }
    LayeredScheme s;
    if (doc.contains("name") && doc["name"].is_string()) s.name = doc["name"].get<std::string>();
    for (std::size_t n = 0; n < doc["messages"].size(); ++n) {
        const auto& e = doc["messages"][n];
        const std::string where = "message " + std::to_string(n + 1);
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string()) throw ParseError(where + ": missing \"id\"");
        Message w;
        w.id = e["id"].get<std::string>();
        w.antennas = index_list(e, "antennas", where);
        w.power = number_field(e, "power", where);
        w.gdof = number_field(e, "gdof", where);
        w.audience = index_list(e, "audience", where);
        s.messages.push_back(std::move(w));
    }
    if (doc.contains("decode_order")) {
        const auto& order = doc["decode_order"];
        if (!order.is_object()) throw ParseError("\"decode_order\" must be an object keyed by receiver");
        for (const auto& [key, ids] : order.items()) {
            User rx = 0;
            try {
                std::size_t used = 0;
                rx = std::stoi(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw ParseError("decode_order key \"" + key + "\" is not a receiver index");
            }
            if (!ids.is_array()) throw ParseError("decode_order for receiver " + key + " must be an array");
            auto& list = s.decode_order[rx];
            for (const auto& id : ids) {
                if (!id.is_string()) throw ParseError("decode_order entries must be message ids");
                list.push_back(id.get<std::string>());
            }
        }
    }
    return s;
}

GdofPoint parse_gdof_point(std::string_view text) {
    std::vector<Rational> values;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        values.push_back(Rational::parse(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return GdofPoint(std::move(values));
}

}  // namespace gdof
