#include "gdof/network.hpp"

#include <array>
#include <cstdint>

#include "json.hpp"

#include "gdof/errors.hpp"

namespace gdof {

using json = nlohmann::json;

ChannelMatrix::ChannelMatrix(std::vector<std::vector<Rational>> rows, std::string name)
    : k_(static_cast<int>(rows.size())), name_(std::move(name)) {
    if (k_ < 1) throw ValidationError("channel matrix must have at least one user");
    entries_.reserve(static_cast<std::size_t>(k_) * k_);
    for (int i = 0; i < k_; ++i) {
        if (static_cast<int>(rows[i].size()) != k_) {
            throw ValidationError("channel matrix is not square: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(rows[i].size()) + " entries, expected " + std::to_string(k_));
        }
        for (int j = 0; j < k_; ++j) {
            if (rows[i][j].sign() < 0) {
                throw ValidationError("negative channel strength at row " + std::to_string(i + 1) + ", col " +
                                      std::to_string(j + 1));
            }
            entries_.push_back(std::move(rows[i][j]));
        }
    }
}

const Rational& ChannelMatrix::alpha(User rx, User tx) const {
    return entries_[static_cast<std::size_t>(rx - 1) * k_ + static_cast<std::size_t>(tx - 1)];
}

void ChannelMatrix::check_user(User u) const {
    if (!valid_user(u)) {
        throw ValidationError("user index " + std::to_string(u) + " out of range [1.." + std::to_string(k_) + "]");
    }
}

ChannelMatrix ChannelMatrix::restricted_to(const std::vector<User>& users) const {
    std::vector<std::vector<Rational>> rows;
    rows.reserve(users.size());
    for (User i : users) {
        check_user(i);
        auto& row = rows.emplace_back();
        row.reserve(users.size());
        for (User j : users) row.push_back(alpha(i, j));
    }
    return ChannelMatrix(std::move(rows));
}

std::vector<std::vector<Rational>> ChannelMatrix::rows() const {
    std::vector<std::vector<Rational>> out(static_cast<std::size_t>(k_));
    for (int i = 1; i <= k_; ++i) {
        for (int j = 1; j <= k_; ++j) out[i - 1].push_back(alpha(i, j));
    }
    return out;
}

Rational delta(const ChannelMatrix& m, User i, User j) {
    m.check_user(i);
    m.check_user(j);
    if (i == j) return Rational(0);
    return m.alpha(i, i) - m.alpha(j, i);
}

ChannelMatrix parse_network(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("network file must be a JSON object");
    if (!doc.contains("alpha")) throw ParseError("network file lacks the \"alpha\" key");
    const auto& alpha = doc["alpha"];
    if (!alpha.is_array() || alpha.empty()) throw ParseError("\"alpha\" must be a non-empty array of rows");

    const std::size_t k = alpha.size();
    std::vector<std::vector<Rational>> rows;
    rows.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const auto& row = alpha[i];
        if (!row.is_array()) throw ParseError("row " + std::to_string(i + 1) + " is not an array");
        if (row.size() != k) {
            throw ValidationError("non-square matrix: row " + std::to_string(i + 1) + " has " +
                                  std::to_string(row.size()) + " entries, expected " + std::to_string(k));
        }
        auto& out = rows.emplace_back();
        for (std::size_t j = 0; j < k; ++j) {
            const std::string where = "row " + std::to_string(i + 1) + ", col " + std::to_string(j + 1);
            if (!row[j].is_string()) {
                throw ParseError("entry at " + where + " must be a number-string such as \"1/2\" or \"0.25\"");
            }
            auto value = Rational::try_parse(row[j].get<std::string>());
            if (!value) throw ParseError("unparsable number \"" + row[j].get<std::string>() + "\" at " + where);
            if (value->sign() < 0) throw ValidationError("negative entry at " + where);
            out.push_back(std::move(*value));
        }
    }
    if (doc.contains("K")) {
        const auto& kv = doc["K"];
        if (!kv.is_number_integer() || kv.get<long long>() != static_cast<long long>(k)) {
            throw ValidationError("\"K\" does not match the matrix dimension " + std::to_string(k));
        }
    }
    std::string name;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ParseError("\"name\" must be a string");
        name = doc["name"].get<std::string>();
    }
    return ChannelMatrix(std::move(rows), std::move(name));
}

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::tin: return "TIN";
        case Regime::ctin: return "CTIN";
        case Regime::sls: return "SLS";
        case Regime::strict_sls: return "strict-SLS";
    }
    return "?";
}

std::optional<Regime> regime_from_name(std::string_view name) {
    for (Regime r : {Regime::tin, Regime::ctin, Regime::sls, Regime::strict_sls}) {
        if (regime_name(r) == name) return r;
    }
    if (name == "tin") return Regime::tin;
    if (name == "ctin") return Regime::ctin;
    if (name == "sls") return Regime::sls;
    if (name == "strict-sls" || name == "strict_sls") return Regime::strict_sls;
    return std::nullopt;
}

bool RegimeReport::in(Regime r) const {
    switch (r) {
        case Regime::tin: return in_tin;
        case Regime::ctin: return in_ctin;
        case Regime::sls: return in_sls;
        case Regime::strict_sls: return in_strict_sls;
    }
    return false;
}

const RegimeViolation* RegimeReport::witness(Regime r) const {
    for (const auto& v : violations) {
        if (v.regime == r) return &v;
    }
    return nullptr;
}

namespace {

// Which of a regime's inequalities failed at a triple.
enum class Term {
    tin_pair,        // a_ii >= a_il + a_mi
    ctin_pair,       // a_ii >= a_ij + a_ji
    three_user,      // a_ii >= a_ik + a_ji - a_jk
    row_max,         // a_ii >= a_ij
    col_max,         // a_ii >= a_ki
};

struct Hit {
    int i, j, k;
    Term term;
};

// Scans the quantified triples (i, j, k), i not in {j, k}, in lexicographic
// order and returns the first violation of the regime's inequalities.
// `a(i, j)` is 0-based; T is int64 (common denominator) or Rational.
template <typename T, typename Get>
std::optional<Hit> first_violation(int k_users, Regime regime, Get&& a) {
    const bool strict = regime == Regime::strict_sls;
    auto fails = [strict](const T& lhs, const T& rhs) { return strict ? !(lhs > rhs) : lhs < rhs; };
    for (int i = 0; i < k_users; ++i) {
        const T& aii = a(i, i);
        for (int j = 0; j < k_users; ++j) {
            if (j == i) continue;
            for (int k = 0; k < k_users; ++k) {
                if (k == i) continue;
                switch (regime) {
                    case Regime::tin:
                        if (fails(aii, T(a(i, j) + a(k, i)))) return Hit{i, j, k, Term::tin_pair};
                        break;
                    case Regime::ctin:
                        if (fails(aii, T(a(i, j) + a(j, i)))) return Hit{i, j, k, Term::ctin_pair};
                        if (fails(aii, T(a(i, k) + a(j, i) - a(j, k)))) return Hit{i, j, k, Term::three_user};
                        break;
                    case Regime::sls:
                    case Regime::strict_sls:
                        if (fails(aii, a(i, j))) return Hit{i, j, k, Term::row_max};
                        if (fails(aii, a(k, i))) return Hit{i, j, k, Term::col_max};
                        if (fails(aii, T(a(i, k) + a(j, i) - a(j, k)))) return Hit{i, j, k, Term::three_user};
                        break;
                }
            }
        }
    }
    return std::nullopt;
}

std::string alpha_name(int rx, int tx) {
    return "alpha[" + std::to_string(rx + 1) + "," + std::to_string(tx + 1) + "]";
}

RegimeViolation describe(const ChannelMatrix& m, Regime regime, const Hit& h) {
    auto a = [&m](int i, int j) { return m.alpha(i + 1, j + 1); };
    const std::string op = regime == Regime::strict_sls ? " > " : " >= ";
    RegimeViolation v{regime, h.i + 1, h.j + 1, h.k + 1, a(h.i, h.i), Rational(0), {}};
    std::string rhs_text;
    switch (h.term) {
        case Term::tin_pair:
            v.rhs = a(h.i, h.j) + a(h.k, h.i);
            rhs_text = alpha_name(h.i, h.j) + " + " + alpha_name(h.k, h.i);
            break;
        case Term::ctin_pair:
            v.rhs = a(h.i, h.j) + a(h.j, h.i);
            rhs_text = alpha_name(h.i, h.j) + " + " + alpha_name(h.j, h.i);
            break;
        case Term::three_user:
            v.rhs = a(h.i, h.k) + a(h.j, h.i) - a(h.j, h.k);
            rhs_text = alpha_name(h.i, h.k) + " + " + alpha_name(h.j, h.i) + " - " + alpha_name(h.j, h.k);
            break;
        case Term::row_max:
            v.rhs = a(h.i, h.j);
            rhs_text = alpha_name(h.i, h.j);
            break;
        case Term::col_max:
            v.rhs = a(h.k, h.i);
            rhs_text = alpha_name(h.k, h.i);
            break;
    }
    v.inequality = alpha_name(h.i, h.i) + op + rhs_text + " fails: " + v.lhs.str() + op + v.rhs.str() +
                   " is false";
    return v;
}

std::optional<std::vector<std::int64_t>> integer_view(const ChannelMatrix& m) {
    std::vector<Rational> all;
    all.reserve(static_cast<std::size_t>(m.size()) * m.size());
    for (int i = 1; i <= m.size(); ++i) {
        for (int j = 1; j <= m.size(); ++j) all.push_back(m.alpha(i, j));
    }
    return scale_to_integers(all, std::int64_t{1} << 60);
}

std::optional<Hit> scan(const ChannelMatrix& m, Regime regime) {
    const int k = m.size();
    if (auto ints = integer_view(m)) {
        const auto& v = *ints;
        return first_violation<std::int64_t>(k, regime, [&v, k](int i, int j) -> const std::int64_t& {
            return v[static_cast<std::size_t>(i) * k + j];
        });
    }
    return first_violation<Rational>(k, regime,
                                     [&m](int i, int j) -> const Rational& { return m.alpha(i + 1, j + 1); });
}

}  // namespace

RegimeReport classify(const ChannelMatrix& m) {
    RegimeReport report;
    for (Regime r : {Regime::tin, Regime::ctin, Regime::sls, Regime::strict_sls}) {
        if (auto hit = scan(m, r)) report.violations.push_back(describe(m, r, *hit));
    }
    report.in_tin = report.witness(Regime::tin) == nullptr;
    report.in_ctin = report.witness(Regime::ctin) == nullptr;
    report.in_sls = report.witness(Regime::sls) == nullptr;
    report.in_strict_sls = report.witness(Regime::strict_sls) == nullptr;
    return report;
}

bool in_regime(const ChannelMatrix& m, Regime r) { return !scan(m, r).has_value(); }

bool in_regime(const std::vector<std::int64_t>& scaled, int k, Regime r) {
    if (scaled.size() != static_cast<std::size_t>(k) * k) throw ValidationError("scaled matrix shape");
    return !first_violation<std::int64_t>(k, r, [&scaled, k](int i, int j) -> const std::int64_t& {
                return scaled[static_cast<std::size_t>(i) * k + j];
            }).has_value();
}

void require_sls(const ChannelMatrix& m) {
    if (auto hit = scan(m, Regime::sls)) {
        throw RegimeRefusal("matrix is not in the SLS regime: witness (i,j,k)=(" + std::to_string(hit->i + 1) + "," +
                            std::to_string(hit->j + 1) + "," + std::to_string(hit->k + 1) + "), " +
                            describe(m, Regime::sls, *hit).inequality);
    }
}

}  // namespace gdof
