#include "arakelov/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "arakelov/gram_io.hpp"
#include "arakelov/json_io.hpp"

namespace arakelov {

namespace {

struct Settings {
    // global
    unsigned threads = 1;
    std::uint64_t node_cap = kDefaultNodeCap;
    std::uint64_t seed = 0;
    std::string config;
    std::string format;
    // shared
    std::string field = "Q";
    std::string gram;
    std::string element;
    int n = 0;
    int l = 1;
    int rank = 1;
    double s = 0;
    double cutoff = 0;
    std::vector<double> radii;
    int trials = 0;
    long long p = kDefaultHeckePrime;
    double z_max = 3.0;
    std::string kind;
    double epsilon = 0.05;
    std::optional<double> det_degree;
    std::optional<double> slope;
    bool allow_large = false;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// With `strict` off no option is required, so a config file can still supply it.
std::unique_ptr<CLI::App> build_app(Settings& st, bool strict = true) {
    auto app = std::make_unique<CLI::App>("Arakelov bundles, the mean value formula and Minkowski-Hlawka bounds",
                                          "arakelov");
    app->require_subcommand(1);
    app->add_option("--threads", st.threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_option("--node-cap", st.node_cap, "enumeration node budget per call");
    app->add_option("--seed", st.seed, "random seed");
    app->add_option("--config", st.config, "key=value file; command line flags take precedence");
    app->add_option("--format", st.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));

    auto field = [&](CLI::App* c) { c->add_option("--field", st.field, "Q or Q(sqrt{D})"); };
    auto gram = [&](CLI::App* c, bool required) {
        auto* o = c->add_option("--gram,--rank-e", st.gram, "Gram file");
        if (required) o->required(strict);
    };

    auto* fi = app->add_subcommand("field-info", "invariants of a number field");
    field(fi);
    fi->add_option("--element", st.element, "a or a,b for a + b sqrt(D); prints its divisor");

    auto* bi = app->add_subcommand("bundle-info", "degree, slope and stability data of a bundle");
    gram(bi, false);
    field(bi);
    bi->add_option("--rank", st.rank, "rank of the trivial bundle when no Gram file is given");

    auto* sec = app->add_subcommand("sections", "nonzero global sections");
    gram(sec, true);

    auto* zt = app->add_subcommand("zeta", "partial sums of the subbundle zeta function");
    gram(zt, true);
    zt->add_option("--l", st.l, "subbundle rank");
    zt->add_option("--s", st.s, "exponent s")->required(strict);
    zt->add_option("--cutoff", st.cutoff, "degree cutoff T")->required(strict);

    auto* mv = app->add_subcommand("mvt-verify", "Monte Carlo check of the mean value formula over Q");
    mv->add_option("--n", st.n, "lattice rank")->required(strict);
    mv->add_option("--l", st.l, "number of columns");
    mv->add_option("--t", st.radii, "column radii (one value is repeated)");
    mv->add_option("--trials", st.trials, "number of random lattices");
    mv->add_option("--p", st.p, "Hecke prime");
    mv->add_option("--z-max", st.z_max, "accepted |z|");

    auto* bd = app->add_subcommand("bounds", "closed-form bounds and thresholds");
    field(bd);
    bd->add_option("--kind", st.kind, "report kind")
        ->required(strict)
        ->check(CLI::IsMember({"theorem", "thresholds", "intro", "corollary", "converse", "gap"}));
    bd->add_option("--n", st.n, "rank n of F")->required(strict);
    bd->add_option("--l", st.l, "subbundle rank l");
    bd->add_option("--epsilon", st.epsilon, "epsilon of the converse threshold");
    bd->add_option("--det-degree", st.det_degree, "degree of det F (theorem)");
    bd->add_option("--slope", st.slope, "slope of F (theorem); det degree = n * slope");
    bd->add_option("--cutoff", st.cutoff, "zeta cutoff T (theorem; adaptive when omitted)");
    gram(bd, false);

    auto* dn = app->add_subcommand("density", "packing density of a lattice over Q");
    gram(dn, true);

    auto* sr = app->add_subcommand("search", "random search for F with no sections of E (x) F");
    gram(sr, false);
    field(sr);
    sr->add_option("--n", st.n, "rank of F")->required(strict);
    sr->add_option("--slope", st.slope, "slope of F")->required(strict);
    sr->add_option("--trials", st.trials, "maximal number of draws");
    sr->add_option("--p", st.p, "Hecke prime (lower bound for the split prime)");
    sr->add_option("--epsilon", st.epsilon, "epsilon of the converse short-circuit");
    sr->add_flag("--allow-large", st.allow_large, "permit rk(E) * n * d above 32");

    for (auto* sub : app->get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();
    return app;
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw UsageError(path + ":" + std::to_string(number) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        while (!key.empty() && key.front() == '-') key.erase(0, 1);
        entries.emplace_back(key, trim(line.substr(eq + 1)));
    }
    return entries;
}

void parse_into(CLI::App& app, std::vector<std::string> args) {
    std::reverse(args.begin(), args.end());
    app.parse(args);
}

CLI::App* chosen(CLI::App& app) { return app.get_subcommands().front(); }

/// Appends "--key=value" for config entries whose option was not given.
std::vector<std::string> apply_config(CLI::App& app, std::vector<std::string> args, const std::string& path) {
    CLI::App* sub = chosen(app);
    for (const auto& [key, value] : read_config(path)) {
        if (key == "config") continue;
        const std::string flag = "--" + key;
        CLI::Option* opt = sub->get_option_no_throw(flag);
        if (!opt) opt = app.get_option_no_throw(flag);
        if (!opt) throw UsageError("config key '" + key + "' is not an option of " + sub->get_name());
        if (opt->count() > 0) continue;
        args.push_back(flag + "=" + value);
    }
    return args;
}

ArakelovBundle load_bundle(const Settings& st) {
    if (st.gram.empty()) return trivial_bundle(NumberField::parse(st.field), st.rank);
    return read_gram_file(st.gram);
}

FieldElement parse_element(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return FieldElement(parse_rational(text));
    return FieldElement(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

void flatten(const Json& j, const std::string& prefix, std::ostream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        std::string s = j.get<std::string>();
        std::replace(s.begin(), s.end(), '\n', ';');
        out << prefix << " = " << s << '\n';
    } else {
        out << prefix << " = " << j.dump() << '\n';
    }
}

void emit(const Json& j, const std::string& format, std::ostream& out) {
    if (format == "text") flatten(j, "", out);
    else out << j.dump(2) << '\n';
}

int cmd_field_info(const Settings& st, std::ostream& out) {
    const NumberField K = NumberField::parse(st.field);
    Json j = to_json(K);
    if (!st.element.empty()) {
        const FieldElement x = parse_element(st.element);
        const AdelicDivisor div = divisor(K, x);
        Json entries = Json::object();
        for (const auto& [place, value] : div.entries) entries[place.label()] = number(value);
        j["divisor"] = entries;
        j["divisor_product"] = number(div.product());
    }
    emit(j, st.format, out);
    return kExitOk;
}

int cmd_bundle_info(const Settings& st, std::ostream& out) {
    const ArakelovBundle E = load_bundle(st);
    Json j;
    j["field"] = E.field().descriptor();
    j["rank"] = E.rank();
    j["degree"] = number(degree(E));
    j["slope"] = number(slope(E));
    j["covolume"] = number(restrict_scalars(E).covolume());
    j["minkowski_guarantee"] = minkowski_guarantee(E);
    Json mus = Json::array();
    for (int l = 1; l <= E.rank(); ++l) {
        Json m;
        m["l"] = l;
        try {
            const MuMax mm = mu_max(E, l, std::nullopt, st.node_cap);
            m["value"] = number(mm.value);
            m["exact"] = mm.exact;
        } catch (const Unsupported&) {
            m["value"] = nullptr;
            m["exact"] = false;
        } catch (const Indeterminate&) {
            m["value"] = nullptr;
            m["exact"] = false;
        }
        mus.push_back(m);
    }
    j["mu_max"] = mus;
    j["semistability"] = to_json(semistability_verdict(E, st.node_cap));
    emit(j, st.format, out);
    return kExitOk;
}

int cmd_sections(const Settings& st, std::ostream& out) {
    const ArakelovBundle E = load_bundle(st);
    const SectionReport report = global_sections(E, st.node_cap);
    Json j;
    j["field"] = E.field().descriptor();
    j["rank"] = E.rank();
    const Json body = to_json(report);
    for (const auto& [k, v] : body.items()) j[k] = v;
    emit(j, st.format, out);
    return report.truncated ? kExitIndeterminate : kExitOk;
}

int cmd_zeta(const Settings& st, std::ostream& out) {
    const ArakelovBundle E = load_bundle(st);
    const ZetaPartial z = zeta_partial(E, st.l, st.s, st.cutoff, st.node_cap);
    if (st.format == "json" || st.format == "text") {
        emit(to_json(z), st.format, out);
        return kExitOk;
    }
    const auto records = enumerate_subbundles(E, st.l, -st.cutoff, st.node_cap);
    std::vector<std::pair<double, std::uint64_t>> shells;
    for (const auto& r : records) {
        const double d = number(r.degree).get<double>();
        if (!shells.empty() && shells.back().first == d) ++shells.back().second;
        else shells.emplace_back(d, 1);
    }
    out << "degree,multiplicity\n";
    for (const auto& [d, m] : shells) out << number(d).dump() << ',' << m << '\n';
    out << "partial_sum," << number(z.partial_sum).dump() << '\n';
    out << "terms," << z.terms << '\n';
    out << "tail_bound_estimate," << (z.tail_bound_estimate ? number(*z.tail_bound_estimate).dump() : "") << '\n';
    return kExitOk;
}

int cmd_mvt(const Settings& st, std::ostream& out) {
    std::vector<double> radii = st.radii.empty() ? std::vector<double>{1.0} : st.radii;
    if (radii.size() == 1 && st.l > 1) radii.assign(st.l, radii[0]);
    RandomLatticeSpec spec;
    spec.n = st.n;
    spec.p = st.p;
    spec.seed = st.seed;
    MvtOptions options;
    options.trials = st.trials > 0 ? st.trials : 2000;
    options.threads = st.threads;
    options.node_cap = st.node_cap;
    const MvtComparison c = mvt_compare(st.n, st.l, radii, spec, options);
    emit(to_json(c, st.z_max), st.format, out);
    return std::abs(c.z_score) <= st.z_max ? kExitOk : kExitNegative;
}

int cmd_bounds(const Settings& st, std::ostream& out) {
    const NumberField K = NumberField::parse(st.field);
    BoundReport report;
    Json j;
    if (st.kind == "theorem") {
        const ArakelovBundle E = st.gram.empty() ? trivial_bundle(K, 1) : read_gram_file(st.gram);
        if (st.det_degree.has_value() == st.slope.has_value())
            throw UsageError("theorem needs exactly one of --det-degree and --slope");
        const double det_degree = st.det_degree ? *st.det_degree : st.n * *st.slope;
        ZetaParams params;
        params.node_cap = st.node_cap;
        if (st.cutoff > 0) params.cutoff = st.cutoff;
        report = main_inequality(E, st.n, det_degree, params);
        j = to_json(report);
        j["field"] = E.field().descriptor();
        emit(j, st.format, out);
        return report.verdict == "not guaranteed" ? kExitNegative : kExitOk;
    }
    if (st.kind == "thresholds") {
        report = thresholds(K, st.n, st.l, st.epsilon);
    } else {
        report.kind = st.kind;
        report.inputs = {{"n", st.n}, {"l", st.l}, {"epsilon", st.epsilon}};
        double v = 0;
        if (st.kind == "intro") v = intro_threshold(K, st.n);
        else if (st.kind == "corollary") v = corollary_threshold(K, st.n, st.l);
        else if (st.kind == "converse") v = converse_threshold(K, st.n, st.l, st.epsilon);
        else v = threshold_gap(K, st.n, st.l);
        report.values = {{"value", v}};
        report.verdict = st.kind == "gap" ? "width of the window left open by the bounds" : "slope threshold";
    }
    j = to_json(report);
    j["field"] = K.descriptor();
    emit(j, st.format, out);
    return kExitOk;
}

int cmd_density(const Settings& st, std::ostream& out) {
    const ArakelovBundle E = load_bundle(st);
    Json j = to_json(density_report(E, st.node_cap));
    j["field"] = E.field().descriptor();
    emit(j, st.format, out);
    return kExitOk;
}

int cmd_search(const Settings& st, std::ostream& out) {
    const ArakelovBundle E = load_bundle(st);
    RandomLatticeSpec spec;
    spec.p = st.p;
    spec.seed = st.seed;
    SearchOptions options;
    options.epsilon = st.epsilon;
    options.threads = st.threads;
    options.node_cap = st.node_cap;
    options.allow_large = st.allow_large;
    const std::uint64_t trials = st.trials > 0 ? static_cast<std::uint64_t>(st.trials) : 200;
    const SearchOutcome o = find_section_free(E, st.n, *st.slope, trials, spec, options);
    Json j;
    j["field"] = E.field().descriptor();
    j["rank_e"] = E.rank();
    j["n"] = st.n;
    j["slope"] = number(*st.slope);
    j["max_trials"] = trials;
    j["p"] = st.p;
    j["seed"] = st.seed;
    const Json body = to_json(o);
    for (const auto& [k, v] : body.items()) j[k] = v;
    emit(j, st.format, out);
    return o.status == SearchStatus::found ? kExitOk : kExitNegative;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Settings st;
    const bool has_config = std::any_of(args.begin(), args.end(), [](const std::string& a) {
        return a == "--config" || a.rfind("--config=", 0) == 0;
    });
    std::unique_ptr<CLI::App> app = build_app(st, !has_config);
    try {
        parse_into(*app, args);
        if (!st.config.empty()) {
            const std::vector<std::string> full = apply_config(*app, args, st.config);
            st = Settings{};
            app = build_app(st);
            parse_into(*app, full);
        }
    } catch (const CLI::CallForHelp&) {
        out << app->help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app->help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    const std::string name = chosen(*app)->get_name();
    if (st.format.empty()) st.format = name == "zeta" ? "csv" : "json";
    if (st.format == "csv" && name != "zeta") {
        err << "usage error: csv output is only available for zeta\n";
        return kExitUsage;
    }
    try {
        if (name == "field-info") return cmd_field_info(st, out);
        if (name == "bundle-info") return cmd_bundle_info(st, out);
        if (name == "sections") return cmd_sections(st, out);
        if (name == "zeta") return cmd_zeta(st, out);
        if (name == "mvt-verify") return cmd_mvt(st, out);
        if (name == "bounds") return cmd_bounds(st, out);
        if (name == "density") return cmd_density(st, out);
        if (name == "search") return cmd_search(st, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "error: " << st.gram << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (const Indeterminate& e) {
        err << "indeterminate: " << e.what() << '\n';
        return kExitIndeterminate;
    } catch (const DivergenceSuspected& e) {
        err << "indeterminate: " << e.what() << '\n';
        return kExitIndeterminate;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    err << "usage error: unknown subcommand\n";
    return kExitUsage;
}

}  // namespace arakelov
