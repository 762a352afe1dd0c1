#include "gdof/cycles.hpp"

#include <algorithm>
#include <numeric>

#include "gdof/errors.hpp"

namespace gdof {

UserSet make_user_set(std::vector<User> users) {
    if (users.empty()) throw ValidationError("user set must be nonempty");
    std::sort(users.begin(), users.end());
    users.erase(std::unique(users.begin(), users.end()), users.end());
    if (users.front() < 1) throw ValidationError("user indices start at 1");
    return users;
}

UserSet all_users(int k) {
    UserSet s(static_cast<std::size_t>(k));
    std::iota(s.begin(), s.end(), 1);
    return s;
}

Cycle::Cycle(std::vector<User> users) : users_(std::move(users)) {
    if (users_.empty()) throw ValidationError("a cycle needs at least one user");
    auto sorted = users_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("cycle users must be distinct");
    }
    if (sorted.front() < 1) throw ValidationError("user indices start at 1");
    std::rotate(users_.begin(), std::min_element(users_.begin(), users_.end()), users_.end());
}

UserSet Cycle::user_set() const {
    UserSet s = users_;
    std::sort(s.begin(), s.end());
    return s;
}

std::string Cycle::str() const {
    std::string out = "(";
    for (std::size_t m = 0; m < users_.size(); ++m) {
        if (m) out += "→";
        out += std::to_string(users_[m]);
    }
    return out + ")";
}

namespace {

void skip_spaces(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
}

bool consume(std::string_view& s, std::string_view token) {
    skip_spaces(s);
    if (s.substr(0, token.size()) != token) return false;
    s.remove_prefix(token.size());
    return true;
}

Cycle parse_cycle_prefix(std::string_view& s) {
    if (!consume(s, "(")) throw ParseError("cycle must start with '('");
    std::vector<User> users;
    while (true) {
        skip_spaces(s);
        std::size_t n = 0;
        while (n < s.size() && s[n] >= '0' && s[n] <= '9') ++n;
        if (n == 0 || n > 9) throw ParseError("expected a user index in cycle");
        users.push_back(std::stoi(std::string(s.substr(0, n))));
        s.remove_prefix(n);
        if (consume(s, ")")) break;
        if (!consume(s, "→") && !consume(s, "->")) throw ParseError("expected '→' or '->' between cycle users");
    }
    try {
        return Cycle(std::move(users));
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

}  // namespace

Cycle parse_cycle(std::string_view text) {
    auto rest = text;
    Cycle c = parse_cycle_prefix(rest);
    skip_spaces(rest);
    if (!rest.empty()) throw ParseError("trailing text after cycle: \"" + std::string(rest) + "\"");
    return c;
}

CyclicPartition::CyclicPartition(std::vector<Cycle> cycles) : cycles_(std::move(cycles)) {
    std::sort(cycles_.begin(), cycles_.end(), [](const Cycle& a, const Cycle& b) { return a.head() < b.head(); });
    for (const auto& c : cycles_) ground_.insert(ground_.end(), c.users().begin(), c.users().end());
    std::sort(ground_.begin(), ground_.end());
    if (std::adjacent_find(ground_.begin(), ground_.end()) != ground_.end()) {
        throw ValidationError("cycles of a partition must be pairwise disjoint");
    }
}

std::size_t CyclicPartition::trivial_count() const {
    return static_cast<std::size_t>(
        std::count_if(cycles_.begin(), cycles_.end(), [](const Cycle& c) { return c.trivial(); }));
}

std::string CyclicPartition::str() const {
    std::string out = "{";
    for (std::size_t n = 0; n < cycles_.size(); ++n) {
        if (n) out += ",";
        out += cycles_[n].str();
    }
    return out + "}";
}

CyclicPartition parse_partition(std::string_view text) {
    auto s = text;
    if (!consume(s, "{")) throw ParseError("partition must start with '{'");
    std::vector<Cycle> cycles;
    if (!consume(s, "}")) {
        while (true) {
            cycles.push_back(parse_cycle_prefix(s));
            if (consume(s, "}")) break;
            if (!consume(s, ",")) throw ParseError("expected ',' between partition cycles");
        }
    }
    skip_spaces(s);
    if (!s.empty()) throw ParseError("trailing text after partition");
    if (cycles.empty()) throw ParseError("partition must contain at least one cycle");
    try {
        return CyclicPartition(std::move(cycles));
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

void check_cycle(const ChannelMatrix& m, const Cycle& c) {
    for (User u : c.users()) m.check_user(u);
}

Rational weight(const ChannelMatrix& m, const Cycle& c) {
    check_cycle(m, c);
    Rational w;
    if (c.trivial()) return w;
    for (std::size_t i = 0; i < c.length(); ++i) w += m.alpha(c.at(i + 1), c.at(i));
    return w;
}

Rational cycle_delta(const ChannelMatrix& m, const Cycle& c) {
    check_cycle(m, c);
    if (c.trivial()) return m.alpha(c.head(), c.head());
    Rational d;
    for (std::size_t i = 0; i < c.length(); ++i) d += delta(m, c.at(i), c.at(i + 1));
    return d;
}

Rational partition_delta(const ChannelMatrix& m, const CyclicPartition& p) {
    Rational total;
    for (const auto& c : p.cycles()) total += cycle_delta(m, c);
    return total;
}

Cycle combine(const std::vector<Cycle>& cycles) {
    if (cycles.size() < 2) throw ValidationError("combining needs at least two cycles");
    std::vector<User> joined;
    for (const auto& c : cycles) joined.insert(joined.end(), c.users().begin(), c.users().end());
    auto sorted = joined;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("cannot combine overlapping cycles");
    }
    return Cycle(std::move(joined));
}

Cycle heads_cycle(const std::vector<Cycle>& cycles) {
    std::vector<User> heads;
    heads.reserve(cycles.size());
    for (const auto& c : cycles) heads.push_back(c.head());
    return Cycle(std::move(heads));
}

std::vector<Cycle> enumerate_cycles(const UserSet& s_in) {
    const UserSet s = make_user_set(s_in);
    const std::size_t n = s.size();
    if (n > 16) throw CapExceeded("cycle enumeration is limited to 16 users");
    std::vector<Cycle> out;
    for (std::size_t len = 1; len <= n; ++len) {
        std::vector<Cycle> layer;
        // choose the member set by bitmask, then order the non-head members
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != len) continue;
            std::vector<User> members;
            for (std::size_t b = 0; b < n; ++b) {
                if (mask & (1u << b)) members.push_back(s[b]);
            }
            do {
                layer.emplace_back(members);
            } while (std::next_permutation(members.begin() + 1, members.end()));
        }
        std::sort(layer.begin(), layer.end());
        out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
    }
    return out;
}

CyclicPartition partition_from_successors(const UserSet& users, const std::vector<int>& succ) {
    const std::size_t n = users.size();
    std::vector<bool> seen(n, false);
    std::vector<Cycle> cycles;
    for (std::size_t start = 0; start < n; ++start) {
        if (seen[start]) continue;
        std::vector<User> members;
        for (std::size_t v = start; !seen[v]; v = static_cast<std::size_t>(succ[v])) {
            seen[v] = true;
            members.push_back(users[v]);
        }
        cycles.emplace_back(std::move(members));
    }
    return CyclicPartition(std::move(cycles));
}

std::vector<CyclicPartition> enumerate_partitions(const UserSet& s_in) {
    const UserSet s = make_user_set(s_in);
    if (s.size() > partition_enumeration_cap) {
        throw CapExceeded("partition enumeration is limited to " + std::to_string(partition_enumeration_cap) +
                          " users; use the assignment solver");
    }
    std::vector<int> succ(s.size());
    std::iota(succ.begin(), succ.end(), 0);
    std::vector<CyclicPartition> out;
    do {
        out.push_back(partition_from_successors(s, succ));
    } while (std::next_permutation(succ.begin(), succ.end()));
    return out;
}

CyclicPartition merge_trivial_cycles(const CyclicPartition& p) {
    if (p.trivial_count() < 2) return p;
    std::vector<Cycle> kept;
    std::vector<User> trivial_users;
    for (const auto& c : p.cycles()) {
        if (c.trivial()) {
            trivial_users.push_back(c.head());
        } else {
            kept.push_back(c);
        }
    }
    kept.emplace_back(std::move(trivial_users));
    return CyclicPartition(std::move(kept));
}

}  // namespace gdof
