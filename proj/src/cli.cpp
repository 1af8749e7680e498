#include "backlim/cli.hpp"
#include "backlim/corpus.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace backlim {

std::string map_digest(const PLMap& f) {
    const std::string text = serialize_map(f);
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return hex.str();
}

std::vector<std::array<Rational, 2>> plot_rows(const PLMap& f, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("--samples must be at least 2");
    const Interval& dom = f.domain();
    std::vector<Rational> xs;
    for (const auto& d : f.dots()) xs.push_back(d.x);
    for (std::size_t i = 1; i <= samples; ++i)
        xs.push_back(dom.lo() + dom.length() * Rational(static_cast<long>(i), static_cast<long>(samples + 1)));
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::array<Rational, 2>> rows;
    for (auto& x : xs) rows.push_back({x, f.eval(x)});
    return rows;
}

namespace {

struct Options {
    std::string map_path;
    std::string point;
    std::string target;
    std::size_t period = 0;
    std::string seed;
    std::string json_path;
    std::string corpus_action;
    std::vector<std::string> names;
    std::string dir = "data";
    std::size_t jobs = 1;
    std::size_t samples = 0;
    std::string out_path;
    std::string tree;
    std::string domain = "0..5";
    Budget budget;
    ScanOptions scan;
};

// Outcome of one subcommand before it is wrapped into a report.
struct Outcome {
    json result;
    json inputs;
    int code = kExitOk;
    std::optional<bool> exact;
    std::optional<PLMap> map;
};

json budgets_json(const Budget& b) {
    return {{"depth", b.depth}, {"width_cap", b.width_cap}, {"max_period", b.max_period}};
}

void add_budget_flags(CLI::App* app, Options& o, bool with_period = true) {
    app->add_option("--depth", o.budget.depth, "backward depth")->check(CLI::PositiveNumber);
    app->add_option("--width", o.budget.width_cap, "node budget per search")->check(CLI::PositiveNumber);
    if (with_period)
        app->add_option("--max-period", o.budget.max_period, "largest period searched")->check(CLI::PositiveNumber);
}

Outcome cmd_analyze(const Options& o) {
    Outcome out;
    out.map = load_map(o.map_path);
    Rational y = Rational::parse(o.point);
    out.inputs = {{"map", o.map_path}, {"point", y.str()}};
    auto enc = salpha_enclosure(*out.map, y, o.budget);
    out.result = {{"enclosure", to_json(enc)}, {"beta_upper", to_json(enc.upper)}};
    out.exact = enc.exact;
    return out;
}

Outcome cmd_certify(const Options& o) {
    Outcome out;
    out.map = load_map(o.map_path);
    const PLMap& f = *out.map;
    Rational y = Rational::parse(o.point), t = Rational::parse(o.target);
    out.inputs = {{"map", o.map_path}, {"point", y.str()}, {"target", t.str()}};
    if (o.period) out.inputs["period"] = o.period;
    if (!f.domain().contains(y) || !f.domain().contains(t)) throw std::invalid_argument("point outside domain");
    std::size_t within = o.period ? o.period : o.budget.max_period;
    PeriodicOrbit orbit;
    try {
        orbit = orbit_of_periodic_point(f, t, within);
    } catch (const std::invalid_argument&) {
        throw PreconditionError("target " + t.str() + " is not periodic within period " + std::to_string(within));
    }
    if (o.period && o.period % orbit.least_period != 0)
        throw PreconditionError("target " + t.str() + " has least period " + std::to_string(orbit.least_period));

    SearchStats stats;
    std::optional<Certificate> cert;
    if (auto c = find_exact_tail(f, y, orbit, o.budget.depth, o.budget.width_cap, &stats)) cert = *c;
    std::vector<Rational> starts{t};
    for (const auto& p : orbit.points)
        if (p != t) starts.push_back(p);
    for (const auto& s : starts) {
        if (cert) break;
        if (auto c = find_contraction(f, y, s, orbit.least_period, o.budget.depth, o.budget.width_cap, &stats))
            cert = *c;
    }
    out.result = {{"orbit", to_json(orbit)}, {"stats", to_json(stats)}};
    if (!cert) {
        out.result["status"] = "NotFound";
        return out;
    }
    auto v = verify_certificate(f, y, *cert);
    out.result["status"] = "Found";
    out.result["certificate"] = to_json(*cert);
    out.result["verified"] = v.ok;
    if (!v.ok) {
        out.result["reason"] = v.reason;
        out.code = kExitFailure;
    }
    return out;
}

Outcome cmd_exclude(const Options& o) {
    Outcome out;
    out.map = load_map(o.map_path);
    const PLMap& f = *out.map;
    Rational y = Rational::parse(o.point);
    IntervalSet seed = IntervalSet::parse(o.seed);
    out.inputs = {{"map", o.map_path}, {"point", y.str()}, {"seed", seed.str()}};
    if (!f.domain().contains(y)) throw std::invalid_argument("point outside domain");
    auto res = avoided_region(f, y, seed, o.budget.depth);
    if (!res.cert) {
        out.result = {{"status", "RejectedSeed"}, {"reason", res.rejection}};
        return out;
    }
    auto v = verify_certificate(f, y, *res.cert);
    out.result = {{"status", "Accepted"},
                  {"certificate", to_json(Certificate(*res.cert))},
                  {"verified", v.ok},
                  {"excluded", {{"region", to_json(res.cert->region)}, {"except", to_json(res.cert->punctures)}}},
                  {"upper", to_json(res.cert->upper(f.domain()))}};
    if (!v.ok) {
        out.result["reason"] = v.reason;
        out.code = kExitFailure;
    }
    return out;
}

Outcome cmd_periodic(const Options& o) {
    Outcome out;
    out.map = load_map(o.map_path);
    out.inputs = {{"map", o.map_path}, {"max_period", o.budget.max_period}};
    try {
        out.result = to_json(periodic_orbits(*out.map, o.budget.max_period));
    } catch (const PieceBudgetExceeded& e) {
        throw PreconditionError(e.what());
    }
    return out;
}

Outcome cmd_markov(const Options& o) {
    Outcome out;
    out.map = load_map(o.map_path);
    const PLMap& f = *out.map;
    out.inputs = {{"map", o.map_path}};
    auto ms = markov_partition(f);
    if (!ms) throw PreconditionError("no finite Markov partition within the cut-point cap");
    json cycles = json::array();
    for (const auto& m : discover_cycles(f, *ms)) {
        json c = to_json(m);
        Verdict tr = is_transitive(*ms, m);
        c["transitive"] = to_string(tr);
        c["mixing"] = to_string(is_mixing(*ms, m));
        if (tr == Verdict::Yes) c["exceptional"] = to_json(exceptional_set(f, *ms, m));
        cycles.push_back(std::move(c));
    }
    out.result = {{"partition", to_json(*ms)}, {"cycles", cycles}};
    return out;
}

Outcome cmd_corpus(const Options& o) {
    Outcome out;
    std::vector<std::string> names = o.names;
    if (names.empty()) names = {"all"};
    if (names.size() == 1 && names.front() == "all") names = corpus_names();
    out.inputs = {{"action", o.corpus_action}, {"names", names}};
    if (o.corpus_action == "list") {
        out.result = corpus_names();
        return out;
    }
    if (o.corpus_action == "export") {
        out.inputs["dir"] = o.dir;
        std::filesystem::create_directories(o.dir);
        json written = json::array();
        for (const auto& n : names) {
            auto e = build_entry(n);
            auto write = [&](const std::string& file, const std::string& text) {
                auto path = (std::filesystem::path(o.dir) / file).string();
                std::ofstream os(path);
                if (!(os << text << "\n")) throw std::invalid_argument("cannot write " + path);
                written.push_back(path);
            };
            write(n + ".json", serialize_map(e.map));
            write(n + ".expectations.json", expectations_json(e).dump(2));
        }
        out.result = {{"written", written}};
        return out;
    }
    for (const auto& n : names) build_entry(n);  // unknown names fail before any work
    auto results = run_entries(names, o.jobs);
    json entries = json::array();
    bool all = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        json r = to_json(results[i]);
        r["map_digest"] = map_digest(build_entry(names[i]).map);
        entries.push_back(std::move(r));
        all = all && results[i].pass();
    }
    out.result = {{"entries", entries}, {"pass", all}};
    out.code = all ? kExitOk : kExitFailure;
    return out;
}

Outcome cmd_scan(Options o) {
    Outcome out;
    auto dots = o.domain.find("..");
    if (dots == std::string::npos || o.domain.substr(0, dots) != "0")
        throw std::invalid_argument("--domain must look like 0..D");
    o.scan.domain = std::stol(o.domain.substr(dots + 2));
    o.scan.budget = o.budget;
    o.scan.max_period = o.budget.max_period;
    o.scan.jobs = o.jobs;
    out.inputs = {{"dots", o.scan.dots}, {"domain", o.domain}, {"max_period", o.scan.max_period}, {"limit", o.scan.limit}};
    out.result = scan_maps(o.scan);
    return out;
}

Outcome cmd_plot(const Options& o) {
    Outcome out;
    out.map = load_map(o.map_path);
    const PLMap& f = *out.map;
    out.inputs = {{"map", o.map_path}, {"samples", o.samples}, {"out", o.out_path}};
    auto rows = plot_rows(f, o.samples);
    std::ostringstream tsv;
    tsv << "x\tf(x)\n";
    for (const auto& r : rows) tsv << r[0].str() << '\t' << r[1].str() << '\n';
    std::size_t tree_rows = 0;
    if (!o.tree.empty()) {
        out.inputs["tree"] = o.tree;
        auto comma = o.tree.rfind(',');
        if (comma == std::string::npos) throw std::invalid_argument("--tree expects POINT,DEPTH");
        Rational root = Rational::parse(o.tree.substr(0, comma));
        std::size_t depth = std::stoul(o.tree.substr(comma + 1));
        auto tree = backward_tree(f, root, depth, o.budget.width_cap);
        tsv << "\n# backward tree of " << root.str() << "\ndepth\tnode\n";
        for (std::size_t d = 0; d < tree.levels.size(); ++d)
            for (auto idx : tree.levels[d]) {
                const Interval& v = tree.nodes[idx].value;
                tsv << d << '\t' << (v.degenerate() ? v.lo().str() : v.str()) << '\n';
                ++tree_rows;
            }
    }
    std::ofstream os(o.out_path);
    if (!os || !(os << tsv.str())) throw std::invalid_argument("cannot write " + o.out_path);
    out.result = {{"out", o.out_path}, {"rows", rows.size()}, {"tree_rows", tree_rows}};
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Certified backward limit sets of piecewise-linear interval maps", "backlim"};
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "lower and upper bounds for sa(point) and beta(point)");
    analyze->add_option("map", o.map_path, "map JSON file")->required();
    analyze->add_option("--point", o.point, "rational point")->required();
    add_budget_flags(analyze, o);

    auto* certify = app.add_subcommand("certify", "certify that the orbit of a periodic target lies in sa(point)");
    certify->add_option("map", o.map_path)->required();
    certify->add_option("--point", o.point)->required();
    certify->add_option("--target", o.target)->required();
    certify->add_option("--period", o.period, "declared period of the target")->check(CLI::PositiveNumber);
    add_budget_flags(certify, o);

    auto* exclude = app.add_subcommand("exclude", "exclude an invariant seed and its basin from sa(point)");
    exclude->add_option("map", o.map_path)->required();
    exclude->add_option("--point", o.point)->required();
    exclude->add_option("--seed", o.seed, "intervals \"[a,b];[c,d]\"")->required();
    add_budget_flags(exclude, o, false);

    auto* periodic = app.add_subcommand("periodic", "periodic orbits and periodic continua");
    periodic->add_option("map", o.map_path)->required();
    periodic->add_option("--max-period", o.budget.max_period)->check(CLI::PositiveNumber);

    auto* markov = app.add_subcommand("markov", "Markov partition, cycles of intervals, exceptional sets");
    markov->add_option("map", o.map_path)->required();

    auto* corpus = app.add_subcommand("corpus", "built-in example maps");
    corpus->add_option("action", o.corpus_action, "verify | export | list")
        ->required()
        ->check(CLI::IsMember({"verify", "export", "list"}));
    corpus->add_option("names", o.names, "entry names or all");
    corpus->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
    corpus->add_option("--dir", o.dir, "export directory");

    auto* scan = app.add_subcommand("scan", "certified period sets over a family of integer maps");
    scan->add_option("--dots", o.scan.dots);
    scan->add_option("--domain", o.domain, "0..D");
    scan->add_option("--limit", o.scan.limit);
    scan->add_option("--jobs", o.jobs)->check(CLI::PositiveNumber);
    add_budget_flags(scan, o);

    auto* plot = app.add_subcommand("plot", "TSV samples of the graph and of a backward tree");
    plot->add_option("map", o.map_path)->required();
    plot->add_option("--samples", o.samples)->required();
    plot->add_option("--out", o.out_path)->required();
    plot->add_option("--tree", o.tree, "POINT,DEPTH");
    plot->add_option("--width", o.budget.width_cap)->check(CLI::PositiveNumber);

    for (auto* sub : app.get_subcommands({}))
        sub->add_option("--json", o.json_path, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    auto start = std::chrono::steady_clock::now();
    Outcome res;
    std::string command;
    try {
        if (analyze->parsed()) command = "analyze", res = cmd_analyze(o);
        else if (certify->parsed()) command = "certify", res = cmd_certify(o);
        else if (exclude->parsed()) command = "exclude", res = cmd_exclude(o);
        else if (periodic->parsed()) command = "periodic", res = cmd_periodic(o);
        else if (markov->parsed()) command = "markov", res = cmd_markov(o);
        else if (corpus->parsed()) command = "corpus", res = cmd_corpus(o);
        else if (scan->parsed()) command = "scan", res = cmd_scan(o);
        else if (plot->parsed()) command = "plot", res = cmd_plot(o);
    } catch (const PreconditionError& e) {
        err << "precondition failed: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    json report = {{"command", command},
                   {"inputs", res.inputs},
                   {"map_digest", res.map ? json(map_digest(*res.map)) : json(nullptr)},
                   {"result", res.result},
                   {"budgets", budgets_json(o.budget)},
                   {"wall_time_ms", ms}};
    if (res.exact) report["exact"] = *res.exact;
    if (o.json_path.empty()) {
        out << report.dump(2) << "\n";
    } else {
        std::ofstream os(o.json_path);
        if (!(os << report.dump(2) << "\n")) {
            err << "error: cannot write " << o.json_path << "\n";
            return kExitInput;
        }
    }
    return res.code;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace backlim
