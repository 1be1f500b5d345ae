#pragma once
// Command-line front end.  Kept in a header (run() is callable in-process)
// so the test suite can drive the exact code path the binary uses.
//
// Exit codes: 0 success, 2 malformed input or usage, 1 internal guard
// violation.  With --json the machine-readable report goes to stdout;
// diagnostics go to stderr.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "selftest.hpp"

namespace witt {

namespace detail {

inline i64 sieve_limit_default(const std::string& config_path) {
    i64 limit = 1000000;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        require(bool(in), "config file not readable: " + config_path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            auto eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(0, eq);
            if (key == "sieve_limit") limit = std::stoll(line.substr(eq + 1));
        }
    }
    if (const char* env = std::getenv("WITT_SIEVE_LIMIT")) limit = std::stoll(env);
    return limit;
}

inline void emit(std::ostream& out, const json& j, bool as_json, const std::string& human) {
    if (as_json)
        out << j.dump(2) << "\n";
    else
        out << human;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact arithmetic for crossed/noncrossed products in the Brauer group of Q((t))"};
    app.require_subcommand(0, 1);
    bool as_json = false;
    std::string config_path;
    app.add_flag("--json", as_json, "emit machine-readable JSON to stdout");
    app.add_option("--config", config_path, "key=value config file (sieve_limit=N)");

    std::string ext_spec, base_spec = "Q", chi_spec, alpha_spec, verify_mode = "all", only_category;
    i64 p = 2, m = 1, x = 100, seed = 1, limit = -1;
    int n = 2, s_par = 2, t_par = 2;
    u64 samples = 200000;

    auto make_sub = [&](const char* name, const char* desc) {
        auto* sub = app.add_subcommand(name, desc);
        sub->fallthrough();
        return sub;
    };
    auto* c_height = make_sub("height", "global height of a cyclic extension");
    c_height->add_option("--ext", ext_spec, "top field spec")->required();
    c_height->add_option("--base", base_spec, "base field spec (default Q)");
    c_height->add_option("--p", p, "prime")->required();

    auto* c_classify = make_sub("classify", "Case I/II classification of a fiber");
    c_classify->add_option("--chi", chi_spec, "character spec")->required();
    c_classify->add_option("--m", m, "index divisor m (fiber index = |chi| m)")->required();

    auto* c_decide = make_sub("decide", "crossed/noncrossed verdict for alpha + chi");
    c_decide->add_option("--chi", chi_spec, "character spec")->required();
    c_decide->add_option("--alpha", alpha_spec, "Hasse invariants, e.g. 5:1/8,11:7/8")->required();
    c_decide->add_option("--limit", limit, "witness prime bound (default: sieve limit)");

    auto* c_primesets = make_sub("primesets", "witness prime sets P0, P1, P2");
    c_primesets->add_option("--ext", ext_spec, "top field spec")->required();
    c_primesets->add_option("--base", base_spec, "base field spec (default Q)");
    c_primesets->add_option("--p", p, "prime")->required();
    c_primesets->add_option("--n", n, "cover exponent for P1 / P0")->required();
    c_primesets->add_option("--limit", limit, "enumeration bound (default: sieve limit)");

    auto* c_density = make_sub("density", "density of witnessed noncrossed classes");
    c_density->add_option("--chi", chi_spec, "character spec")->required();
    c_density->add_option("--m", m, "index divisor m")->required();
    c_density->add_option("--x", x, "support window bound")->required();
    c_density->add_option("--samples", samples, "Monte Carlo samples");
    c_density->add_option("--seed", seed, "Monte Carlo seed");

    auto* c_local = make_sub("local-data", "decomposition data at a place");
    c_local->add_option("--ext", ext_spec, "top field spec")->required();
    c_local->add_option("--base", base_spec, "base field spec (default Q)");
    std::string place_spec = "2";
    c_local->add_option("--q", place_spec, "rational prime or 'inf'")->required();

    auto* c_meta = make_sub("metacyclic", "metacyclic 2-group verifications");
    c_meta->add_option("--verify", verify_mode, "all | iso | h1 | e2")
        ->check(CLI::IsMember({"all", "iso", "h1", "e2"}));
    c_meta->add_option("--s", s_par, "parameter s >= 2")->required();
    c_meta->add_option("--t", t_par, "parameter t >= 2")->required();

    auto* c_selftest = make_sub("selftest", "run the acceptance corpus");
    c_selftest->add_option("--only", only_category, "restrict to one category");

    std::reverse(args.begin(), args.end());  // CLI11 consumes in reverse
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }
    if (app.get_subcommands().empty()) {
        err << app.help();
        return 2;
    }

    try {
        i64 sieve_limit = detail::sieve_limit_default(config_path);
        if (limit < 0) limit = sieve_limit;

        if (c_height->parsed()) {
            require(is_prime(p), "height: --p must be prime");
            auto ext = cyclic_extension(parse_field(base_spec), parse_field(ext_spec));
            auto h = global_height(ext, p);
            json j;
            j["input"] = {{"ext", field_str(ext.top())}, {"base", field_str(ext.base())}, {"p", p}};
            j.update(height_json(h));
            std::string human = "h_" + std::to_string(p) + "(" + field_str(ext.top()) + "/" + field_str(ext.base()) +
                                ") = " + h.str() + (h.exact ? "" : "  (interval; special base)") + "\n";
            detail::emit(out, j, as_json, human);
            return 0;
        }

        if (c_classify->parsed()) {
            auto chi = parse_character(chi_spec);
            auto cls = classify_fiber(chi, m);
            json j;
            j["input"] = {{"chi", character_str(chi)}, {"m", m}};
            j.update(classification_json(cls));
            std::string human = "fiber over " + character_str(chi) + " at index |chi|*m = " +
                                std::to_string(chi.order() * m) + ": " + std::string(j["verdict"]) + "\n";
            for (auto& r : cls.rows)
                human += "  p=" + std::to_string(r.p) + "  n_p=" + std::to_string(r.n_p) + "  b_p=" + r.bound.str() +
                         "  exceeds=" + bool3_str(r.exceeds) + "\n";
            detail::emit(out, j, as_json, human);
            return 0;
        }

        if (c_decide->parsed()) {
            auto chi = parse_character(chi_spec);
            auto alpha = parse_class(alpha_spec);
            auto res = decide_crossed(alpha, chi, limit);
            json j;
            j["input"] = {{"chi", character_str(chi)}, {"alpha", class_str(alpha)}, {"limit", limit}};
            j.update(decide_json(res));
            std::string human = "alpha + chi with alpha = " + class_str(alpha) + ", chi = " + character_str(chi) +
                                ":\n  index = " + std::to_string(res.fiber_index) + ", verdict = " +
                                std::string(j["verdict"]) + " (" + res.detail + ")\n";
            if (res.q1) human += "  witnesses: q1=" + std::to_string(*res.q1) + " q2=" + std::to_string(*res.q2) +
                                 (res.q0 ? " q0=" + std::to_string(*res.q0) : "") + "\n";
            detail::emit(out, j, as_json, human);
            return 0;
        }

        if (c_primesets->parsed()) {
            require(is_prime(p), "primesets: --p must be prime");
            auto ext = cyclic_extension(parse_field(base_spec), parse_field(ext_spec));
            auto P0 = p0_spec(ext.top(), ipow(p, n));
            auto P1 = p1_spec(ext, p, n);
            auto P2 = p2_spec(ext, p);
            json j;
            j["input"] = {{"ext", field_str(ext.top())}, {"base", field_str(ext.base())}, {"p", p}, {"n", n},
                          {"limit", limit}};
            j["P0"] = primeset_json(P0, limit);
            j["P1"] = primeset_json(P1, limit);
            j["P2"] = primeset_json(P2, limit);
            std::string human;
            for (auto& [name, spec] : std::vector<std::pair<std::string, PrimeSetSpec>>{{"P0", P0}, {"P1", P1}, {"P2", P2}}) {
                human += name + " (mod " + std::to_string(spec.modulus) + "): residues {";
                for (size_t i = 0; i < spec.residues.size() && i < 16; ++i)
                    human += (i ? "," : "") + std::to_string(spec.residues[i]);
                if (spec.residues.size() > 16) human += ",...";
                human += "}  [" + spec.note + "]\n";
            }
            detail::emit(out, j, as_json, human);
            return 0;
        }

        if (c_density->parsed()) {
            auto chi = parse_character(chi_spec);
            auto rep = noncrossed_density_report(chi, m, x, u64(seed), samples);
            json j;
            j["input"] = {{"chi", character_str(chi)}, {"m", m}, {"x", x}, {"seed", seed}, {"samples", samples}};
            j.update(density_json(rep));
            char buf[160];
            std::snprintf(buf, sizeof buf, "d_S = %.6f (%s), bound >= %.6f, window of %zu primes, q0 = %lld\n", rep.d,
                          rep.exact ? "exact" : "Monte Carlo", rep.lower_bound, rep.support_size,
                          (long long)rep.q0);
            detail::emit(out, j, as_json, buf);
            return 0;
        }

        if (c_local->parsed()) {
            auto ext = cyclic_extension(parse_field(base_spec), parse_field(ext_spec));
            Place pl = (place_spec == "inf" || place_spec == "oo") ? Place::archimedean()
                                                                   : Place::at(std::stoll(place_spec));
            auto ld = local_data(ext, pl);
            std::optional<TameLocalPresentation> pres;
            if (!pl.infinite && ld.e % pl.q != 0) pres = tame_presentation(ext, pl.q);
            json j;
            j["input"] = {{"ext", field_str(ext.top())}, {"base", field_str(ext.base())},
                          {"place", pl.infinite ? json("inf") : json(pl.q)}};
            j.update(local_data_json(ld, pres));
            std::string human = "e=" + std::to_string(ld.e) + " f=" + std::to_string(ld.f) + " g=" +
                                std::to_string(ld.g) + "\n";
            detail::emit(out, j, as_json, human);
            return 0;
        }

        if (c_meta->parsed()) {
            json j;
            j["input"] = {{"verify", verify_mode}, {"s", s_par}, {"t", t_par}};
            bool all_ok = true;
            json checks = json::array();
            auto record = [&](const std::string& name, bool ok, const std::string& detail0 = "") {
                json c;
                c["check"] = name;
                c["pass"] = ok;
                if (!detail0.empty()) c["detail"] = detail0;
                checks.push_back(c);
                all_ok = all_ok && ok;
            };
            if (verify_mode == "all" || verify_mode == "iso") {
                record("presentation isomorphism a -> a c^{2^{t-1}}", presentation_isomorphism_check(s_par, t_par));
                for (int l = 1; l < t_par; ++l) {
                    auto d = kernel_decomposition(s_par, t_par, l);
                    record("kernel decomposition l=" + std::to_string(l), d.verified,
                           "orders " + std::to_string(d.ord1) + "," + std::to_string(d.ord2) + " exp " +
                               std::to_string(d.exponent));
                }
            }
            if (verify_mode == "all") {
                MetacyclicGroup G(MFamily::E, s_par, t_par);
                record("order 2^{s+t+1}", G.order() == ipow(2, s_par + t_par + 1));
                auto inv = structure_invariants(G);
                record("center = <c^2>", inv.center_is_c2);
                record("commutator = <a^2>", inv.commutator_is_a2);
                record("socle = <a^{2^s}>", inv.socle_is_a2s);
            }
            if (verify_mode == "all" || verify_mode == "h1") {
                // the closed-form/brute-force equivalence on this (s,t)'s dual
                // modules, plus the classical order-2 kernel instance
                FiniteModule m8{{ipow(2, s_par + 1)}};
                Mat minus(1, 1), five(1, 1);
                minus.at(0, 0) = m8.orders[0] - 1;
                five.at(0, 0) = ipow(2, s_par) + 1;
                BicyclicAction wang{m8, minus, five, 2, 2};
                auto qf = h1_restriction_kernel_Q(wang);
                auto bf = h1_restriction_kernel_bruteforce(wang);
                record("closed form matches brute force on mu_{2^{s+1}}", qf == bf.invariant_factors,
                       "kernel order " + std::to_string(bf.order));
            }
            if (verify_mode == "all" || verify_mode == "e2") {
                for (int l = 1; l < t_par; ++l) {
                    int h = t_par - l;
                    if (h <= 0 || h > s_par) continue;
                    auto r = lemma_E2_verify(s_par, l, h);
                    std::string fails;
                    for (auto& f : r.failures) fails += f + "; ";
                    record("dual-module verification l=" + std::to_string(l), r.ok && r.Q.empty(), fails);
                }
            }
            j["pass"] = all_ok;
            j["checks"] = checks;
            std::string human;
            for (auto& c : checks)
                human += std::string(c["pass"] ? "PASS  " : "FAIL  ") + std::string(c["check"]) + "\n";
            detail::emit(out, j, as_json, human);
            return all_ok ? 0 : 1;
        }

        if (c_selftest->parsed()) {
            json j;
            json items = json::array();
            int failures = 0;
            std::string human;
            for (const auto& item : acceptance_items()) {
                if (!only_category.empty() && item.category != only_category) continue;
                auto res = run_acceptance_item(item);
                json e;
                e["id"] = item.id;
                e["name"] = item.name;
                e["category"] = item.category;
                e["pass"] = res.pass;
                e["ms"] = res.ms;
                e["detail"] = res.detail;
                items.push_back(e);
                if (!res.pass) ++failures;
                human += std::string(res.pass ? "PASS" : "FAIL") + "  " + std::to_string(item.id) + "  " + item.name +
                         (res.detail.empty() ? "" : "  [" + res.detail + "]") + "\n";
            }
            j["pass"] = failures == 0;
            j["items"] = items;
            detail::emit(out, j, as_json, human);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
    err << app.help();
    return 2;
}

}  // namespace witt
