#pragma once

// Layered superposition broadcast schemes in the power-exponent calculus and
// a successive-decoding verifier.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gdof/network.hpp"

namespace gdof {

struct Message {
    std::string id;
    std::vector<User> antennas;  // transmitters carrying the message
    Rational power;              // exponent gamma <= 0
    Rational gdof;               // load d >= 0
    std::vector<User> audience;  // receivers that must decode it
};

struct LayeredScheme {
    std::string name;
    std::vector<Message> messages;
    std::map<User, std::vector<std::string>> decode_order;
};

/// Throws ValidationError on unknown ids, bad indices for a K-user network,
/// positive power, negative load, or an audience member missing the message
/// in its decode order.
void validate_scheme(const LayeredScheme& s, int k);

struct DecodeStep {
    std::string id;
    Rational level;  // received level at this receiver
    Rational floor;  // noise floor from undecoded messages (>= 0)
    Rational gdof;
    Rational slack;  // level - floor - gdof
    bool ok = false;
};

struct ReceiverVerdict {
    User receiver = 0;
    bool ok = true;
    std::vector<DecodeStep> steps;  // stops after the first failure
};

struct SchemeVerdict {
    bool ok = true;
    Rational total;  // loads of messages decoded by their whole audience
    std::vector<ReceiverVerdict> receivers;

    /// First failing receiver, if any.
    const ReceiverVerdict* first_failure() const;
};

/// Received level of message w at receiver k: max over its antennas of alpha_k,i plus gamma.
Rational received_level(const ChannelMatrix& m, const Message& w, User k);

SchemeVerdict verify_scheme(const ChannelMatrix& m, const LayeredScheme& s);

/// U from every antenna at exponent 0 carrying K-1, then private V_i at
/// exponent -(K-1) carrying 1.
LayeredScheme ctin_bc_scheme(int k);

/// Block messages "L<i>.<b>" for split depth i in [0, n-1]: 2^i blocks of
/// 2^(n-i) users at exponent -1 + 2^-i carrying 2^-(i+1); private "P<k>" at
/// exponent -1 + 2^-n carrying 2^-n.
LayeredScheme tree_bc_scheme(int n);

/// Common "C" at exponent 0 carrying a; private "P<k>" at exponent -a carrying 1 - a.
LayeredScheme symmetric_bc_scheme(int k, const Rational& a);

}  // namespace gdof
