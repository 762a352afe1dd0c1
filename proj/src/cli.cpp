#include "gdof/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "gdof/errors.hpp"
#include "gdof/generators.hpp"
#include "gdof/properties.hpp"
#include "gdof/serialize.hpp"

namespace gdof::cli {

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 digest failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

namespace {

struct Outcome {
    json results;
    std::string digest;
    int code = exit_ok;
    std::string failure;  // printed to stderr after the report
};

struct Context {
    std::istream& in;
    std::ostream& out;
    bool as_json = false;
    JsonOptions opt;
};

std::string read_source(const std::string& path, std::istream& in) {
    std::ostringstream buf;
    if (path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ValidationError("cannot read " + path);
    buf << file.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file || !(file << text)) throw ValidationError("cannot write " + path);
}

struct Loaded {
    ChannelMatrix matrix;
    std::string digest;
};

Loaded load_network(const std::string& path, std::istream& in) {
    const std::string text = read_source(path, in);
    return {parse_network(text), "sha256:" + sha256_hex(text)};
}

std::string decimal_note(const Rational& v, const Context& c) {
    return c.opt.decimal ? " (" + v.decimal(6) + ")" : "";
}

std::string set_text(const UserSet& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

std::string witness_text(const RegimeViolation& v) {
    if (v.regime == Regime::tin) {
        return "i=" + std::to_string(v.i) + ",l=" + std::to_string(v.j) + ",m=" + std::to_string(v.k);
    }
    return "i=" + std::to_string(v.i) + ",j=" + std::to_string(v.j) + ",k=" + std::to_string(v.k);
}

// -- classify -------------------------------------------------------------

Outcome cmd_classify(const Context& c, const std::string& path) {
    auto [m, digest] = load_network(path, c.in);
    const auto r = classify(m);
    if (!c.as_json) {
        std::string line;
        for (Regime g : {Regime::tin, Regime::ctin, Regime::sls}) {
            if (!line.empty()) line += ' ';
            line += std::string(regime_name(g)) + (r.in(g) ? " ✓" : " ✗");
            if (const auto* w = r.witness(g)) line += " (witness " + witness_text(*w) + ")";
        }
        c.out << line << '\n';
        c.out << "strict SLS " << (r.in_strict_sls ? "✓" : "✗") << '\n';
        for (const auto& v : r.violations) c.out << "  " << regime_name(v.regime) << ": " << v.inequality << '\n';
    }
    return {regime_json(r, c.opt), digest};
}

// -- sum -------------------------------------------------------------------

void print_ptin(const Context& c, const PtinResult& p) {
    c.out << "P-TIN(" << set_text(p.subset) << ") = " << p.value.str() << decimal_note(p.value, c) << " via "
          << p.partition.str() << '\n';
    c.out << "certificate:";
    for (const auto& [cy, w] : p.certificate.lambdas) c.out << ' ' << w.str() << '*' << cy.str();
    c.out << (p.sls_certified ? "" : " (uncertified outside SLS)") << '\n';
}

void print_oracle(const Context& c, const OracleResult& o) {
    if (!o.feasible) {
        c.out << "LP oracle: infeasible (some cycle bound is negative)\n";
        return;
    }
    c.out << "LP oracle: " << o.value.str() << decimal_note(o.value, c) << " at d = (";
    for (int k = 1; k <= o.d.size(); ++k) c.out << (k > 1 ? ", " : "") << o.d.at(k).str();
    c.out << ") over " << o.constraints << " constraints\n";
}

Outcome cmd_sum(const Context& c, const std::string& path, const std::vector<int>& subset, bool oracle,
                const std::string& check) {
    auto [m, digest] = load_network(path, c.in);
    const bool sls = in_regime(m, Regime::sls);
    json results = json::object();

    if (!check.empty()) {
        const UserSet s = subset.empty() ? all_users(m.size()) : make_user_set(subset);
        const auto v = ptin_check(m, s, parse_gdof_point(check));
        if (!c.as_json) {
            if (v.feasible) {
                c.out << "feasible for P-TIN(" << set_text(s) << ")\n";
            } else {
                c.out << "infeasible: " << v.violated->str() << " carries " << v.load.str() << " > Delta "
                      << v.bound.str() << '\n';
            }
        }
        results["check"] = verdict_json(v, c.opt);
        return {results, digest};
    }

    if (subset.empty() && !oracle) {
        const auto t = tina_sum(m);
        if (!t.certified && t.best_subset.size() > oracle_cap) {
            throw RegimeRefusal("TINA outside SLS needs every winning subset within the oracle cap");
        }
        if (!c.as_json) {
            c.out << "TINA = " << t.value.str() << decimal_note(t.value, c) << " via " << t.result.partition.str()
                  << " on S=" << set_text(t.best_subset) << '\n';
        }
        results["tina"] = tina_json(t, c.opt);
        return {results, digest};
    }

    const UserSet s = subset.empty() ? all_users(m.size()) : make_user_set(subset);
    for (User u : s) m.check_user(u);
    if (oracle && s.size() > oracle_cap) {
        throw CapExceeded("--oracle handles at most " + std::to_string(oracle_cap) + " users");
    }
    if (!sls && !oracle) {
        if (s.size() > oracle_cap) throw RegimeRefusal("P-TIN outside SLS is only exact through the LP oracle");
        oracle = true;
    }
    if (sls || !oracle) {
        const auto p = ptin_sum(m, s);
        if (!c.as_json) print_ptin(c, p);
        results["ptin"] = ptin_json(p, c.opt);
    }
    if (oracle) {
        const auto o = ptin_sum_oracle(m, s);
        if (!c.as_json) print_oracle(c, o);
        results["oracle"] = oracle_json(o, s, c.opt);
    }
    return {results, digest};
}

// -- bound -----------------------------------------------------------------

void print_bound(const Context& c, const BcBoundReport& b) {
    c.out << "BC sum-GDoF <= " << b.value.str() << decimal_note(b.value, c) << "  [method " << method_name(b.method)
          << ", witness " << std::visit([](const auto& w) { return w.str(); }, b.witness);
    if (!b.generator.empty()) c.out << ", generator " << b.generator;
    c.out << "]\n";
    for (const auto& st : b.trace) {
        c.out << "  stage " << st.stage << ": S=" << set_text(st.users) << " partition " << st.partition.str()
              << " combined " << st.combined.str() << " N=" << st.cycles << " sum Delta=" << st.delta_sum.str() << '\n';
    }
    if (b.tina) c.out << "  TINA = " << b.tina->str() << '\n';
    if (b.chain_bound) c.out << "  (stages + 2) * TINA = " << b.chain_bound->str() << '\n';
}

Outcome cmd_bound(const Context& c, const std::string& path, const std::string& method, const std::string& cycle,
                  const std::string& partition) {
    auto [m, digest] = load_network(path, c.in);
    require_sls(m);
    BcBoundReport b;
    if (method == "auto") {
        b = bc_sum_upper(m);
    } else if (method == "cycle") {
        if (cycle.empty()) throw ValidationError("--method cycle needs --cycle");
        const Cycle cy = parse_cycle(cycle);
        b.value = bc_cycle_bound(m, cy);
        b.method = BoundMethod::cycle;
        b.witness = cy;
        b.generator = "given";
    } else if (method == "partition") {
        const CyclicPartition p = partition.empty() ? ptin_sum(m, all_users(m.size())).partition
                                                    : parse_partition(partition);
        b.value = bc_partition_bound(m, p);
        b.method = BoundMethod::partition;
        b.witness = p;
        b.generator = partition.empty() ? "p-optimal-partition" : "given";
    } else if (method == "iterative") {
        b = iterative_bound(m);
    } else {
        throw ValidationError("unknown --method " + method);
    }
    if (!c.as_json) print_bound(c, b);
    return {bound_json(b, c.opt), digest};
}

// -- ratio / scheme-verify ----------------------------------------------------

void print_verdict(const Context& c, const SchemeVerdict& v) {
    for (const auto& r : v.receivers) {
        c.out << "receiver " << r.receiver << (r.ok ? " ok" : " FAILS") << '\n';
        for (const auto& st : r.steps) {
            c.out << "  " << std::left << std::setw(8) << st.id << " level " << st.level.str() << " floor "
                  << st.floor.str() << " d " << st.gdof.str() << " slack " << st.slack.str() << (st.ok ? "" : "  <- fails")
                  << '\n';
        }
    }
    c.out << "total = " << v.total.str() << decimal_note(v.total, c) << (v.ok ? "" : " (scheme does not verify)")
          << '\n';
}

std::string failure_text(const SchemeVerdict& v) {
    const auto* r = v.first_failure();
    if (!r) return "scheme does not verify";
    const auto& st = r->steps.back();
    return "scheme fails at receiver " + std::to_string(r->receiver) + ", step " + st.id + ": slack " + st.slack.str();
}

Outcome cmd_ratio(const Context& c, const std::string& path, const std::string& scheme_path) {
    auto [m, digest] = load_network(path, c.in);
    require_sls(m);
    std::optional<LayeredScheme> scheme;
    if (!scheme_path.empty()) scheme = parse_scheme(read_source(scheme_path, c.in));
    const auto r = ratio_report(m, scheme ? &*scheme : nullptr);
    Outcome o{ratio_json(r, c.opt), digest};
    if (!c.as_json) {
        c.out << "TINA = " << r.tina.str() << decimal_note(r.tina, c) << '\n';
        c.out << "BC upper bound = " << r.bound.value.str() << decimal_note(r.bound.value, c) << " ["
              << method_name(r.bound.method) << "]\n";
        c.out << "upper = " << r.upper.str() << decimal_note(r.upper, c) << '\n';
        if (r.lower) c.out << "lower = " << r.lower->str() << decimal_note(*r.lower, c) << '\n';
    }
    if (r.scheme && !r.scheme->ok) {
        if (!c.as_json) print_verdict(c, *r.scheme);
        o.code = exit_failed;
        o.failure = failure_text(*r.scheme);
    }
    return o;
}

Outcome cmd_scheme_verify(const Context& c, const std::string& path, const std::string& scheme_path) {
    auto [m, digest] = load_network(path, c.in);
    const auto s = parse_scheme(read_source(scheme_path, c.in));
    const auto v = verify_scheme(m, s);
    if (!c.as_json) print_verdict(c, v);
    Outcome o{scheme_verdict_json(v, c.opt), digest};
    if (!v.ok) {
        o.code = exit_failed;
        o.failure = failure_text(v);
    }
    return o;
}

// -- gen -------------------------------------------------------------------

struct GenArgs {
    std::string family;
    int k = 3;
    int n = 2;
    std::string a = "1/2";
    std::string nu = "1";
    std::string regime = "SLS";
    std::uint64_t seed = 1;
    std::string output;
    std::string scheme_output;
};

Outcome cmd_gen(const Context& c, const GenArgs& g) {
    std::optional<ChannelMatrix> m;
    std::optional<LayeredScheme> scheme;
    if (g.family == "symmetric") {
        const Rational a = Rational::parse(g.a);
        m = symmetric_network(g.k, a);
        scheme = symmetric_bc_scheme(g.k, a);
    } else if (g.family == "cyclic") {
        m = ctin_cyclic_network(g.k);
        scheme = ctin_bc_scheme(g.k);
    } else if (g.family == "tree") {
        m = tree_network(g.n, Rational::parse(g.nu));
        scheme = tree_bc_scheme(g.n);
    } else if (g.family == "fig1") {
        m = fig1_network();
    } else if (g.family == "halfcross") {
        m = half_cross_network(g.k);
        if (g.k == 2) scheme = symmetric_bc_scheme(2, Rational(1, 2));
    } else if (g.family == "random") {
        const auto r = regime_from_name(g.regime);
        if (!r) throw ValidationError("unknown regime " + g.regime);
        m = random_in_regime(g.k, *r, g.seed);
    } else {
        throw ValidationError("unknown family " + g.family);
    }
    if (!g.scheme_output.empty()) {
        if (!scheme) throw ValidationError("family " + g.family + " has no companion scheme");
        write_file(g.scheme_output, scheme_json(*scheme).dump(2) + "\n");
    }
    const std::string text = network_to_text(*m);
    if (!g.output.empty()) {
        write_file(g.output, text);
    } else if (!c.as_json) {
        c.out << text;
    }
    return {network_to_json(*m), "sha256:" + sha256_hex(text)};
}

// -- verify-theorems -----------------------------------------------------------

Outcome cmd_verify(const Context& c, const HarnessConfig& cfg) {
    const auto suites = run_property_suites(cfg);
    json list = json::array();
    bool all = true;
    for (const auto& s : suites) {
        all = all && s.ok();
        json e = json::object();
        e["suite"] = s.name;
        e["checked"] = s.checked;
        e["failures"] = s.failures;
        e["skipped"] = s.skipped;
        if (!s.note.empty()) e["note"] = s.note;
        if (s.max_ratio) {
            put_rational(e, "max_ratio", *s.max_ratio, c.opt);
            e["ceiling"] = s.ceiling;
        }
        if (!s.ok()) {
            e["detail"] = s.detail;
            if (s.witness) e["witness"] = network_to_json(*s.witness);
        }
        list.push_back(std::move(e));
    }
    json results = json::object();
    results["K"] = cfg.k;
    results["samples"] = cfg.samples;
    results["seed"] = cfg.seed;
    results["passed"] = all;
    results["suites"] = std::move(list);

    if (!c.as_json) {
        c.out << "verify-theorems K=" << cfg.k << " samples=" << cfg.samples << " seed=" << cfg.seed << '\n';
        for (const auto& s : suites) {
            c.out << "  " << std::left << std::setw(40) << s.name << std::right << std::setw(7) << s.checked << "  "
                  << (s.skipped ? "skipped (" + s.note + ")" : s.ok() ? "pass" : "FAIL") << '\n';
        }
        c.out << "max observed ratio vs ceiling\n";
        for (const auto& s : suites) {
            if (!s.max_ratio) continue;
            c.out << "  " << std::left << std::setw(24) << s.name << s.max_ratio->str() << " ("
                  << s.max_ratio->decimal(6) << ") <= " << s.ceiling << '\n';
        }
        for (const auto& s : suites) {
            if (s.ok()) continue;
            c.out << "FAIL " << s.name << ": " << s.detail << '\n';
            if (s.witness) c.out << network_to_text(*s.witness);
        }
    }
    return {results, "", all ? exit_ok : exit_failed};
}

void emit_report(const Context& c, const std::string& command, const Outcome& o, double ms) {
    json report = json::object();
    report["command"] = command;
    report["input_digest"] = o.digest.empty() ? json(nullptr) : json(o.digest);
    report["results"] = o.results;
    report["timing_ms"] = std::round(ms * 1000.0) / 1000.0;
    c.out << report.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact GDoF calculator for K-user interference and broadcast networks", "gdof"};
    app.require_subcommand(1);
    app.fallthrough();
    Context c{in, out};
    app.add_flag("--json", c.as_json, "Emit a JSON report");
    app.add_flag("--decimal", c.opt.decimal, "Annotate exact values with 6-digit decimals");

    std::string path;
    auto* classify_cmd = app.add_subcommand("classify", "TIN / CTIN / SLS membership with witnesses");
    classify_cmd->add_option("network", path, "Network JSON file or -")->required();

    std::vector<int> subset;
    bool oracle = false;
    std::string check;
    auto* sum_cmd = app.add_subcommand("sum", "Polyhedral-TIN value of a subset, or TINA when no subset is given");
    sum_cmd->add_option("network", path, "Network JSON file or -")->required();
    sum_cmd->add_option("--subset", subset, "Users, comma separated")->delimiter(',');
    sum_cmd->add_flag("--oracle", oracle, "Also solve the cycle-bound LP by exact simplex");
    sum_cmd->add_option("--check", check, "Test a GDoF tuple d1,d2,... against every cycle bound");

    std::string method = "auto", cycle, partition;
    auto* bound_cmd = app.add_subcommand("bound", "Broadcast-channel sum-GDoF upper bound");
    bound_cmd->add_option("network", path, "Network JSON file or -")->required();
    bound_cmd->add_option("--method", method, "cycle | partition | iterative | auto")
        ->check(CLI::IsMember({"cycle", "partition", "iterative", "auto"}));
    bound_cmd->add_option("--cycle", cycle, "Cycle such as (1->2->3)");
    bound_cmd->add_option("--partition", partition, "Partition of [K] such as {(1->2),(3)}");

    std::string scheme_path;
    auto* ratio_cmd = app.add_subcommand("ratio", "Bracket the cooperation gain of one network");
    ratio_cmd->add_option("network", path, "Network JSON file or -")->required();
    ratio_cmd->add_option("--scheme", scheme_path, "Layered scheme JSON giving a lower bound");

    auto* verify_cmd = app.add_subcommand("scheme-verify", "Check a layered scheme by successive decoding");
    verify_cmd->add_option("network", path, "Network JSON file or -")->required();
    verify_cmd->add_option("scheme", scheme_path, "Scheme JSON file")->required();

    GenArgs g;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a network family");
    gen_cmd->add_option("family", g.family, "symmetric | cyclic | tree | fig1 | halfcross | random")
        ->required()
        ->check(CLI::IsMember({"symmetric", "cyclic", "tree", "fig1", "halfcross", "random"}));
    gen_cmd->add_option("--K", g.k, "Number of users");
    gen_cmd->add_option("--n", g.n, "Tree depth (K = 2^n)");
    gen_cmd->add_option("--a", g.a, "Cross strength of the symmetric network");
    gen_cmd->add_option("--nu", g.nu, "Tree gap scale");
    gen_cmd->add_option("--regime", g.regime, "TIN | CTIN | SLS | strict-SLS for random draws");
    gen_cmd->add_option("--seed", g.seed, "Seed for random draws");
    gen_cmd->add_option("-o,--output", g.output, "Write the network here instead of stdout");
    gen_cmd->add_option("--scheme-out", g.scheme_output, "Write the companion scheme here");

    HarnessConfig cfg;
    auto* theorems_cmd = app.add_subcommand("verify-theorems", "Run every property suite on seeded corpora");
    theorems_cmd->add_option("--K", cfg.k, "Number of users (2..9)");
    theorems_cmd->add_option("--samples", cfg.samples, "Random draws per corpus");
    theorems_cmd->add_option("--seed", cfg.seed, "Corpus seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    const auto start = std::chrono::steady_clock::now();
    auto* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    Outcome o;
    try {
        if (sub == classify_cmd) o = cmd_classify(c, path);
        else if (sub == sum_cmd) o = cmd_sum(c, path, subset, oracle, check);
        else if (sub == bound_cmd) o = cmd_bound(c, path, method, cycle, partition);
        else if (sub == ratio_cmd) o = cmd_ratio(c, path, scheme_path);
        else if (sub == verify_cmd) o = cmd_scheme_verify(c, path, scheme_path);
        else if (sub == gen_cmd) o = cmd_gen(c, g);
        else o = cmd_verify(c, cfg);
    } catch (const RegimeRefusal& e) {
        err << "refused: " << e.what() << '\n';
        return exit_refused;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (c.as_json) emit_report(c, command, o, ms);
    if (!o.failure.empty()) err << "error: " << o.failure << '\n';
    return o.code;
}

}  // namespace gdof::cli
