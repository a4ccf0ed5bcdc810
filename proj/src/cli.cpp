#include "barcalc/cli.hpp"

#include "barcalc/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace barcalc {

namespace {

using nlohmann::json;

std::string fnv1a_hex(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

json inputs_json(const RunConfig& c) {
    json in;
    in["ring"] = c.ring;
    in["n"] = c.n;
    in["m"] = c.m;
    in["coeff"] = c.coeff;
    in["max_degree"] = c.max_degree;
    in["truncation"] = c.trunc();
    in["seed"] = c.seed;
    if (c.command == "cup-table") {
        in["pair"] = c.pair;
        in["verify_axioms"] = c.verify_axioms;
        in["nmax"] = c.nmax;
        in["pmax"] = c.pmax;
    }
    if (c.command == "hochschild") in["algebra"] = c.algebra;
    if (c.command == "verify") {
        in["suite"] = c.suite;
        in["fault_injection"] = c.fault_injection;
        in["nmax"] = c.nmax;
        in["pmax"] = c.pmax;
    }
    return in;
}

ResultDocument finalize(const RunConfig& c, json results, double ms) {
    json d;
    d["command"] = c.command;
    d["inputs"] = inputs_json(c);
    d["results"] = std::move(results);
    d["artifact_version"] = "1.0.0";
    d["determinism_hash"] = fnv1a_hex(d.dump());
    d["timings"] = {{"total_ms", ms}};
    return {std::move(d)};
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

const FiniteRing& finite_ring(const RingSpec& spec) {
    if (!spec.finite()) throw InfiniteLevel("this command needs a finite ring, not Z");
    return *spec.ring;
}

long field_dim(const FGAbelianGroup& g) { return static_cast<long>(g.torsion.size()); }

json report_items(const GradedRingReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items)
        items.push_back({{"axiom", it.axiom},
                         {"n", it.n},
                         {"m", it.m},
                         {"pass", it.pass},
                         {"exhaustive", it.exhaustive},
                         {"checks", it.checks},
                         {"witness", it.witness}});
    return items;
}

json report_items(const CheckReport& rep) {
    json items = json::array();
    for (const auto& it : rep.items)
        items.push_back({{"name", it.name},
                         {"pass", it.pass},
                         {"exhaustive", it.exhaustive},
                         {"checks", it.checks},
                         {"witness", it.witness}});
    return items;
}

json identity_items(const IdentityReport& rep) {
    json items = json::array();
    for (const auto& v : rep.violations) {
        std::ostringstream w;
        w << "p=" << v.p << " i=" << v.i << " j=" << v.j << " witness=" << v.witness;
        items.push_back({{"name", v.family}, {"pass", false}, {"witness", w.str()}});
    }
    return items;
}

Coeff field_for(const RunConfig& c, long fallback_p) {
    auto k = parse_coeff(c.coeff);
    return k.is_prime_field() ? k : Coeff::fp(fallback_p);
}

} // namespace

void RunConfig::validate() const {
    if (n < 0 || m < 0 || max_degree < 0 || nmax < 0 || pmax < 1 || samples < 1)
        throw ParseError("negative or zero bound where a positive one is required");
    if (truncation > 0 && truncation < max_degree + 1)
        throw ParseError("truncation must be at least max_degree + 1");
    if (cap < 0) throw ParseError("cap must be positive");
}

std::string ResultDocument::text() const { return doc.dump(2) + "\n"; }

bool ResultDocument::ok() const {
    if (doc.contains("results") && doc["results"].contains("ok"))
        return doc["results"]["ok"].get<bool>();
    return true;
}

ResultDocument cmd_em_homotopy(const RunConfig& c) {
    c.validate();
    Timer t;
    auto spec = parse_ring_spec(c.ring);
    auto b = iterated_bar(spec.additive, c.n, c.trunc());
    auto pis = homotopy_groups(b, c.max_degree);
    json groups = json::array();
    for (const auto& g : pis) groups.push_back(g.to_string());
    json results;
    results["homotopy_groups"] = groups;
    return finalize(c, results, t.ms());
}

ResultDocument cmd_em_homology(const RunConfig& c) {
    c.validate();
    Timer t;
    auto spec = parse_ring_spec(c.ring);
    finite_ring(spec);
    auto k = parse_coeff(c.coeff);
    auto x = iterated_bar_set(spec, c.n, c.trunc(), c.budget());
    auto hs = homology(x, k, c.max_degree);
    json groups = json::array(), dims = json::array();
    for (const auto& g : hs) {
        groups.push_back(g.to_string());
        if (k.is_prime_field()) dims.push_back(field_dim(g));
    }
    json results;
    results["homology"] = groups;
    if (k.is_prime_field()) results["dims"] = dims;
    return finalize(c, results, t.ms());
}

ResultDocument cmd_cup_table(const RunConfig& c) {
    c.validate();
    Timer t;
    auto spec = parse_ring_spec(c.ring);
    const auto& s = finite_ring(spec);
    auto k = parse_coeff(c.coeff);
    json results;
    bool all_ok = true;
    if (k.is_prime_field()) {
        long pn, pi, pm, pj;
        char c1, c2, c3;
        std::istringstream in(c.pair);
        if (!(in >> pn >> c1 >> pi >> c2 >> pm >> c3 >> pj) || c1 != ',' || c2 != ':' || c3 != ',')
            throw ParseError("--pair expects n,i:m,j");
        long use_trunc = std::max(pi + pj + 1, c.truncation);
        auto pr = homology_circle_product(s, k, pn, pm, pi, pj, use_trunc, 10, c.seed);
        json entries = json::array();
        for (const auto& tr : pr.matrix.triplets())
            entries.push_back({tr.row, tr.col, tr.val.get_si()});
        results["pairing"] = {{"n", pr.n},
                              {"m", pr.m},
                              {"i", pr.i},
                              {"j", pr.j},
                              {"dim_left", pr.dim_left},
                              {"dim_right", pr.dim_right},
                              {"dim_target", pr.dim_target},
                              {"entries", entries}};
    } else if (!c.verify_axioms) {
        throw ParseError("cup-table needs a prime-field coefficient or --verify-axioms");
    }
    if (c.verify_axioms) {
        auto rep = check_graded_ring_axioms(s, c.nmax, c.pmax, c.budget(), c.samples, c.seed);
        results["axioms"] = report_items(rep);
        all_ok = all_ok && rep.ok();
    }
    results["ok"] = all_ok;
    return finalize(c, results, t.ms());
}

ResultDocument cmd_hochschild(const RunConfig& c) {
    c.validate();
    Timer t;
    if (c.algebra.empty()) throw ParseError("hochschild needs --algebra <structure-constant file>");
    auto a = AugCommAlgebra::from_json_file(c.algebra);
    a.validate();
    auto alg = constant_algebra(a, c.trunc());
    for (long q = 0; q + 1 < c.n; ++q) alg = bar(alg);
    auto mod = c.n == 0 ? alg.mod : bar_module(alg);
    auto nc = normalized_chains(mod, c.max_degree + 1);
    json results;
    json groups = json::array(), dims = json::array();
    for (long i = 0; i <= c.max_degree; ++i) {
        auto h = nc.complex.homology(i);
        groups.push_back(h.to_string());
        if (a.k.is_prime_field()) dims.push_back(field_dim(h));
    }
    results["homotopy_groups"] = groups;
    if (a.k.is_prime_field()) results["dims"] = dims;
    results["coeff"] = a.k.name();
    return finalize(c, results, t.ms());
}

std::string export_complex_json(const ChainComplex& c) {
    json doc;
    doc["ring"] = c.ring.name();
    json degrees = json::array();
    for (long i = 0; i <= c.top_degree(); ++i)
        degrees.push_back({{"degree", i}, {"rank", c.rank(i)}, {"torsion", json::array()}});
    doc["degrees"] = degrees;
    json diffs = json::array();
    for (long i = 1; i <= c.top_degree(); ++i) {
        json entries = json::array();
        for (const auto& tr : reduce_mod(c.diff(i), c.ring).triplets()) {
            if (!tr.val.fits_slong_p()) throw ShapeMismatch("differential entry overflows export");
            entries.push_back({tr.row, tr.col, tr.val.get_si()});
        }
        diffs.push_back({{"from", i}, {"to", i - 1}, {"entries", entries}});
    }
    doc["differentials"] = diffs;
    return doc.dump(2) + "\n";
}

ChainComplex import_complex_json(const std::string& text) {
    json doc = json::parse(text);
    ChainComplex c;
    c.ring = parse_coeff(doc.at("ring").get<std::string>());
    for (const auto& d : doc.at("degrees")) {
        long deg = d.at("degree").get<long>();
        if (deg != static_cast<long>(c.ranks.size())) throw ParseError("degrees out of order");
        if (!d.at("torsion").empty()) throw ParseError("free levels expected");
        c.ranks.push_back(d.at("rank").get<long>());
    }
    if (c.ranks.empty()) throw ParseError("complex has no degrees");
    c.diffs.resize(c.ranks.size());
    c.diffs[0] = IntMatrix::zero(0, c.rank(0));
    for (const auto& d : doc.at("differentials")) {
        long from = d.at("from").get<long>();
        if (from < 1 || from > c.top_degree() || d.at("to").get<long>() != from - 1)
            throw ParseError("differential degrees out of range");
        std::vector<IntMatrix::Triplet> ts;
        for (const auto& e : d.at("entries"))
            ts.push_back({e.at(0).get<long>(), e.at(1).get<long>(), mpz_class(e.at(2).get<long>())});
        c.diffs[from] = IntMatrix::from_triplets(c.rank(from - 1), c.rank(from), std::move(ts));
    }
    c.validate();
    return c;
}

ResultDocument cmd_export_complex(const RunConfig& c) {
    c.validate();
    Timer t;
    auto spec = parse_ring_spec(c.ring);
    finite_ring(spec);
    auto k = parse_coeff(c.coeff);
    auto x = iterated_bar_set(spec, c.n, c.trunc(), c.budget());
    auto nc = normalized_chains(linearize(x, k), c.max_degree);
    auto bytes = export_complex_json(nc.complex);
    json results;
    results["complex"] = json::parse(bytes);
    results["bytes_hash"] = fnv1a_hex(bytes);
    if (!c.output.empty()) {
        std::ofstream out(c.output, std::ios::binary);
        if (!out) throw ParseError("cannot open output file: " + c.output);
        out << bytes;
        results["path"] = c.output;
    }
    return finalize(c, results, t.ms());
}

ResultDocument cmd_verify(const RunConfig& c) {
    c.validate();
    Timer t;
    auto spec = parse_ring_spec(c.ring);
    bool finite = spec.finite();
    auto k2 = field_for(c, 2);
    json suites = json::array();
    bool all_ok = true;

    auto want = [&](const std::string& name) { return c.suite == "all" || c.suite == name; };
    auto add_suite = [&](const std::string& name, bool okv, json items) {
        suites.push_back({{"name", name}, {"ok", okv}, {"items", std::move(items)}});
        all_ok = all_ok && okv;
    };
    auto skip = [&](const std::string& name) {
        add_suite(name, true,
                  json::array({{{"name", "skipped: needs a finite ring"}, {"pass", true}}}));
    };

    if (want("identities")) {
        json items = json::array();
        bool okv = true;
        for (long n = 1; n <= 2; ++n) {
            IdentityReport rep;
            if (finite) {
                auto x = iterated_bar_set(spec, n, 3, c.budget());
                if (c.fault_injection && n == 1)
                    x.face[2][1][1] = (x.face[2][1][1] + 1) % x.card[1];
                rep = verify_identities(x, 3);
            } else {
                rep = verify_identities(iterated_bar(spec.additive, n, 3), 3);
            }
            okv = okv && rep.ok();
            for (const auto& it : identity_items(rep)) items.push_back(it);
            items.push_back({{"name", "identities B^" + std::to_string(n)},
                             {"pass", rep.ok()},
                             {"checks", rep.checks}});
        }
        add_suite("identities", okv, items);
    }

    if (want("homology")) {
        if (!finite) {
            skip("homology");
        } else {
            auto kx = linearize(iterated_bar_set(spec, 1, 5, c.budget()), k2);
            auto nc = normalized_chains(kx, 5);
            auto uc = unnormalized_chains(kx, 5);
            json items = json::array();
            bool okv = true;
            for (long i = 0; i <= 4; ++i) {
                bool same = nc.complex.homology_dim_over_field(i) ==
                            uc.homology_dim_over_field(i);
                okv = okv && same;
                items.push_back({{"name", "normalized = unnormalized, H_" + std::to_string(i)},
                                 {"pass", same}});
            }
            add_suite("homology", okv, items);
        }
    }

    if (want("dg")) {
        if (!finite) {
            skip("dg");
        } else {
            auto x = linearize(nerve(*spec.ring, 3), Coeff::Z());
            auto ez = ez_shuffle(x, x, 3);
            auto aw = alexander_whitney(x, x, 3);
            bool awez = true;
            for (long d = 0; d <= 3; ++d)
                awez = awez && aw.maps[d] * ez.maps[d] == IntMatrix::identity(ez.source.rank(d));
            auto dp = dold_puppe_compare(
                bar_bisimplicial(bar_simplicial_group(spec.additive, 4), k2), 3);
            json items = json::array();
            items.push_back({{"name", "AW after EZ is the identity"}, {"pass", awez}});
            items.push_back({{"name", "Dold-Puppe dimensions agree"}, {"pass", dp.ok()}});
            add_suite("dg", awez && dp.ok(), items);
        }
    }

    if (want("axioms")) {
        if (!finite) {
            skip("axioms");
        } else {
            FiniteRing s = *spec.ring;
            if (c.fault_injection) std::swap(s.mul[s.one][0], s.mul[s.one][s.one]);
            auto rep = check_graded_ring_axioms(s, c.nmax, c.pmax, c.budget(), c.samples, c.seed);
            add_suite("axioms", rep.ok(), report_items(rep));
        }
    }

    if (want("naturality")) {
        if (!finite) {
            skip("naturality");
        } else {
            auto rep = naturality_check(*spec.ring, k2, 2, 3, c.fault_injection, c.budget(),
                                        c.samples, c.seed);
            add_suite("naturality", rep.ok(), report_items(rep));
        }
    }

    if (want("hopf")) {
        if (!finite) {
            skip("hopf");
        } else {
            FiniteRing s = *spec.ring;
            if (c.fault_injection && s.size > 2) std::swap(s.add[1][1], s.add[1][s.size - 1]);
            bool okv = true;
            json items = json::array();
            for (long n = 0; n <= 1; ++n) {
                auto rep = hopf_checks(s, k2, n, 3, c.budget(), c.samples, c.seed);
                okv = okv && rep.ok();
                for (const auto& it : report_items(rep)) items.push_back(it);
            }
            add_suite("hopf", okv, items);
        }
    }

    json results;
    results["suites"] = suites;
    results["ok"] = all_ok;
    return finalize(c, results, t.ms());
}

ResultDocument run_command(const RunConfig& c) {
    if (c.command == "em-homotopy") return cmd_em_homotopy(c);
    if (c.command == "em-homology") return cmd_em_homology(c);
    if (c.command == "cup-table") return cmd_cup_table(c);
    if (c.command == "hochschild") return cmd_hochschild(c);
    if (c.command == "export-complex") return cmd_export_complex(c);
    if (c.command == "verify") return cmd_verify(c);
    throw ParseError("unknown command: " + c.command);
}

int cli_main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"exact bar-construction calculator"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--ring", cfg.ring, "ring spec: Z | Z/m | A x B | table:<file>");
        sub->add_option("--n", cfg.n, "bar iteration count");
        sub->add_option("--m", cfg.m, "second bar iteration count");
        sub->add_option("--coeff", cfg.coeff, "coefficients: Z | Z/m | Fp");
        sub->add_option("--max-degree", cfg.max_degree, "top reported degree");
        sub->add_option("--truncation", cfg.truncation, "simplicial truncation (>= max-degree+1)");
        sub->add_option("--cap", cfg.cap, "per-level simplex budget");
        sub->add_option("--output", cfg.output, "write the result document here");
        sub->add_option("--seed", cfg.seed, "seed for sampled sweeps");
        sub->add_option("--samples", cfg.samples, "sample count for oversized sweeps");
        return sub;
    };

    add_common(app.add_subcommand("em-homotopy", "homotopy groups of B^n G"));
    add_common(app.add_subcommand("em-homology", "homology of B^n S"));
    auto* cup = add_common(app.add_subcommand("cup-table", "homology circle product"));
    cup->add_option("--pair", cfg.pair, "n,i:m,j");
    cup->add_flag("--verify-axioms", cfg.verify_axioms, "run the graded ring axiom sweeps");
    cup->add_option("--nmax", cfg.nmax, "axiom sweep degree bound");
    cup->add_option("--pmax", cfg.pmax, "axiom sweep level bound");
    auto* hh = add_common(app.add_subcommand("hochschild", "reduced higher Hochschild homology"));
    hh->add_option("--algebra", cfg.algebra, "structure-constant JSON file");
    add_common(app.add_subcommand("export-complex", "write the normalized chain complex as JSON"));
    auto* ver = add_common(app.add_subcommand("verify", "run the verification suites"));
    ver->add_option("--suite", cfg.suite, "all | identities | homology | dg | axioms | naturality | hopf");
    ver->add_flag("--fault-injection", cfg.fault_injection, "inject a deliberate fault");
    ver->add_option("--nmax", cfg.nmax, "axiom sweep degree bound");
    ver->add_option("--pmax", cfg.pmax, "axiom sweep level bound");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        auto doc = run_command(cfg);
        if (!cfg.output.empty() && cfg.command != "export-complex") {
            std::ofstream out(cfg.output, std::ios::binary);
            if (!out) {
                std::cerr << "cannot open output file: " << cfg.output << "\n";
                return 2;
            }
            out << doc.text();
        } else {
            std::cout << doc.text();
        }
        bool verdict = cfg.command == "verify" || cfg.verify_axioms;
        if (verdict && !doc.ok()) return 4;
        return 0;
    } catch (const ResourceBudgetExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace barcalc
