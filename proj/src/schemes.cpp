#include "gdof/schemes.hpp"

#include <algorithm>
#include <set>

#include "gdof/errors.hpp"

namespace gdof {

namespace {

void check_index(User u, int k, const std::string& what) {
    if (u < 1 || u > k) {
        throw ValidationError(what + " index " + std::to_string(u) + " out of range [1.." + std::to_string(k) + "]");
    }
}

}  // namespace

void validate_scheme(const LayeredScheme& s, int k) {
    std::map<std::string, const Message*> by_id;
    for (const auto& w : s.messages) {
        if (w.id.empty()) throw ValidationError("message id must be nonempty");
        if (!by_id.emplace(w.id, &w).second) throw ValidationError("duplicate message id \"" + w.id + "\"");
        if (w.antennas.empty()) throw ValidationError("message \"" + w.id + "\" has no antennas");
        if (w.audience.empty()) throw ValidationError("message \"" + w.id + "\" has no audience");
        for (User a : w.antennas) check_index(a, k, "antenna");
        for (User r : w.audience) check_index(r, k, "receiver");
        if (w.power.sign() > 0) throw ValidationError("message \"" + w.id + "\" has positive power exponent");
        if (w.gdof.sign() < 0) throw ValidationError("message \"" + w.id + "\" has negative GDoF load");
    }
    for (const auto& [rx, order] : s.decode_order) {
        check_index(rx, k, "receiver");
        std::set<std::string> seen;
        for (const auto& id : order) {
            if (!by_id.count(id)) {
                throw ValidationError("receiver " + std::to_string(rx) + " decodes unknown message \"" + id + "\"");
            }
            if (!seen.insert(id).second) {
                throw ValidationError("receiver " + std::to_string(rx) + " lists \"" + id + "\" twice");
            }
        }
    }
    for (const auto& w : s.messages) {
        for (User r : w.audience) {
            auto it = s.decode_order.find(r);
            if (it == s.decode_order.end() || std::find(it->second.begin(), it->second.end(), w.id) == it->second.end()) {
                throw ValidationError("receiver " + std::to_string(r) + " is in the audience of \"" + w.id +
                                      "\" but does not decode it");
            }
        }
    }
}

const ReceiverVerdict* SchemeVerdict::first_failure() const {
    for (const auto& r : receivers) {
        if (!r.ok) return &r;
    }
    return nullptr;
}

Rational received_level(const ChannelMatrix& m, const Message& w, User k) {
    Rational best = m.alpha(k, w.antennas.front());
    for (User a : w.antennas) best = max(best, m.alpha(k, a));
    return best + w.power;
}

SchemeVerdict verify_scheme(const ChannelMatrix& m, const LayeredScheme& s) {
    const int k = m.size();
    validate_scheme(s, k);
    std::map<std::string, std::size_t> index;
    for (std::size_t n = 0; n < s.messages.size(); ++n) index[s.messages[n].id] = n;

    SchemeVerdict out;
    // decoded[rx-1][msg]
    std::vector<std::vector<char>> decoded(static_cast<std::size_t>(k), std::vector<char>(s.messages.size(), 0));
    for (User rx = 1; rx <= k; ++rx) {
        ReceiverVerdict rv;
        rv.receiver = rx;
        std::vector<Rational> levels;
        levels.reserve(s.messages.size());
        for (const auto& w : s.messages) levels.push_back(received_level(m, w, rx));
        auto& done = decoded[rx - 1];

        if (auto it = s.decode_order.find(rx); it != s.decode_order.end()) {
            for (const auto& id : it->second) {
                const std::size_t cur = index.at(id);
                Rational floor;
                for (std::size_t n = 0; n < levels.size(); ++n) {
                    if (n != cur && !done[n]) floor = max(floor, levels[n]);
                }
                DecodeStep step;
                step.id = id;
                step.level = levels[cur];
                step.gdof = s.messages[cur].gdof;
                step.slack = step.level - floor - step.gdof;
                step.floor = std::move(floor);
                step.ok = step.slack.sign() >= 0;
                rv.steps.push_back(step);
                if (!step.ok) {
                    rv.ok = false;
                    break;
                }
                done[cur] = 1;
            }
        }
        out.ok = out.ok && rv.ok;
        out.receivers.push_back(std::move(rv));
    }
    for (std::size_t n = 0; n < s.messages.size(); ++n) {
        const auto& w = s.messages[n];
        const bool everyone = std::all_of(w.audience.begin(), w.audience.end(),
                                          [&](User r) { return decoded[r - 1][n] != 0; });
        if (everyone) out.total += w.gdof;
    }
    return out;
}

namespace {

std::vector<User> range_users(int first, int last) {
    std::vector<User> v;
    for (int u = first; u <= last; ++u) v.push_back(u);
    return v;
}

}  // namespace

LayeredScheme ctin_bc_scheme(int k) {
    if (k < 2) throw ValidationError("the cyclic scheme needs K >= 2");
    LayeredScheme s;
    s.name = "ctin_bc_scheme(K=" + std::to_string(k) + ")";
    const auto all = range_users(1, k);
    s.messages.push_back({"U", all, Rational(0), Rational(k - 1), all});
    for (User i = 1; i <= k; ++i) {
        s.messages.push_back({"V" + std::to_string(i), {i}, Rational(-(k - 1)), Rational(1), {i}});
        s.decode_order[i] = {"U", "V" + std::to_string(i)};
    }
    return s;
}

LayeredScheme tree_bc_scheme(int n) {
    if (n < 1) throw ValidationError("the tree scheme needs depth n >= 1");
    if (n > 16) throw CapExceeded("the tree scheme is limited to depth 16");
    const int k = 1 << n;
    LayeredScheme s;
    s.name = "tree_bc_scheme(n=" + std::to_string(n) + ")";
    for (int depth = 0; depth < n; ++depth) {
        const int span = k >> depth;
        const Rational power = Rational(-1) + pow2(-depth);
        const Rational load = pow2(-(depth + 1));
        for (int b = 0; b < (1 << depth); ++b) {
            const auto users = range_users(b * span + 1, (b + 1) * span);
            s.messages.push_back({"L" + std::to_string(depth) + "." + std::to_string(b + 1), users, power, load, users});
        }
    }
    const Rational private_power = Rational(-1) + pow2(-n);
    const Rational private_load = pow2(-n);
    for (User u = 1; u <= k; ++u) {
        s.messages.push_back({"P" + std::to_string(u), {u}, private_power, private_load, {u}});
        auto& order = s.decode_order[u];
        for (int depth = 0; depth < n; ++depth) {
            const int block = (u - 1) / (k >> depth);
            order.push_back("L" + std::to_string(depth) + "." + std::to_string(block + 1));
        }
        order.push_back("P" + std::to_string(u));
    }
    return s;
}

LayeredScheme symmetric_bc_scheme(int k, const Rational& a) {
    if (k < 2) throw ValidationError("the symmetric scheme needs K >= 2");
    if (a.sign() < 0 || a > Rational(1)) throw ValidationError("the symmetric scheme needs 0 <= a <= 1");
    LayeredScheme s;
    s.name = "symmetric_bc_scheme(K=" + std::to_string(k) + ",a=" + a.str() + ")";
    const auto all = range_users(1, k);
    s.messages.push_back({"C", all, Rational(0), a, all});
    for (User u = 1; u <= k; ++u) {
        s.messages.push_back({"P" + std::to_string(u), {u}, -a, Rational(1) - a, {u}});
        s.decode_order[u] = {"C", "P" + std::to_string(u)};
    }
    return s;
}

}  // namespace gdof
