#pragma once

// Channel-strength matrix, the delta calculus and regime classification.
//
// Users are numbered 1..K throughout the public API. alpha(i, j) is the
// strength of the link from transmitter j to receiver i.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdof/rational.hpp"

namespace gdof {

using User = int;

class ChannelMatrix {
public:
    /// Builds a K x K matrix from receiver-major rows. Throws ValidationError
    /// for an empty, ragged or negative input.
    explicit ChannelMatrix(std::vector<std::vector<Rational>> rows, std::string name = {});

    int size() const { return k_; }
    const Rational& alpha(User rx, User tx) const;
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    bool valid_user(User u) const { return u >= 1 && u <= k_; }
    void check_user(User u) const;

    /// Principal submatrix on the given users (order preserved), renumbered 1..|S|.
    ChannelMatrix restricted_to(const std::vector<User>& users) const;

    std::vector<std::vector<Rational>> rows() const;

    friend bool operator==(const ChannelMatrix& a, const ChannelMatrix& b) {
        return a.k_ == b.k_ && a.entries_ == b.entries_;
    }

private:
    int k_ = 0;
    std::vector<Rational> entries_;
    std::string name_;
};

/// alpha_ii - alpha_ji for i != j, 0 for i == j.
Rational delta(const ChannelMatrix& m, User i, User j);

/// Parses the canonical network JSON. Errors name the offending row/column.
ChannelMatrix parse_network(std::string_view text);

enum class Regime { tin, ctin, sls, strict_sls };

std::string_view regime_name(Regime r);
std::optional<Regime> regime_from_name(std::string_view name);

struct RegimeViolation {
    Regime regime;
    User i, j, k;        // for TIN the triple is (i, l, m)
    Rational lhs, rhs;   // the failing comparison reads lhs >= rhs (or > for strict)
    std::string inequality;  // rendered, e.g. "alpha_11 >= alpha_13 + alpha_21"
};

struct RegimeReport {
    bool in_tin = true;
    bool in_ctin = true;
    bool in_sls = true;
    bool in_strict_sls = true;
    /// First (lexicographically smallest) witness for each regime that fails.
    std::vector<RegimeViolation> violations;
    /// Index convention used for the "i not in {j,k}" quantifiers.
    static constexpr std::string_view quantifier_reading = "i not in {j,k}; j = k admitted";

    bool in(Regime r) const;
    const RegimeViolation* witness(Regime r) const;
};

RegimeReport classify(const ChannelMatrix& m);

/// Early-exit membership test; equivalent to classify(m).in(r).
bool in_regime(const ChannelMatrix& m, Regime r);
/// Same test on a row-major k x k matrix already scaled to integers.
bool in_regime(const std::vector<std::int64_t>& scaled, int k, Regime r);

/// Throws RegimeRefusal naming the witness unless m is in the SLS regime.
void require_sls(const ChannelMatrix& m);

}  // namespace gdof
