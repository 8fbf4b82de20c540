#pragma once

// realityvote command line: eval, frontier, oracle, simulate.
// Exit codes: 0 ok, 2 bad input, 3 mismatch, 4 enumeration budget, 5 statistical gate.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "realityvote/error.hpp"
#include "realityvote/guarantees.hpp"
#include "realityvote/io.hpp"
#include "realityvote/montecarlo.hpp"
#include "realityvote/population.hpp"
#include "realityvote/rational.hpp"
#include "realityvote/rules.hpp"
#include "realityvote/verifier.hpp"

namespace realityvote {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitMismatch = 3;
inline constexpr int kExitBudget = 4;
inline constexpr int kExitStatistical = 5;

inline int exit_code(Errc e) {
    switch (e) {
        case Errc::MechanismMismatch: return kExitMismatch;
        case Errc::BudgetExceeded: return kExitBudget;
        default: return kExitInput;
    }
}

/// base{mj|pl|smj:t|cc|scc:t|imj|md|som:t} [re:t] [mode:{full|active|proxy}]
inline Mechanism parse_mechanism(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::vector<std::string> toks;
    while (in >> tok) toks.push_back(tok);
    if (toks.empty()) throw Error(Errc::ParseError, "mechanism: empty spec");
    Mechanism m;
    {
        const std::string& b = toks[0];
        auto colon = b.find(':');
        std::string name = b.substr(0, colon);
        bool found = false;
        for (BaseRule r : {BaseRule::MJ, BaseRule::PL, BaseRule::SMJ, BaseRule::CC, BaseRule::SCC, BaseRule::IMJ,
                           BaseRule::MD, BaseRule::SOM}) {
            std::string n = base_rule_name(r);
            for (auto& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            if (n == name) {
                m.base = r;
                found = true;
            }
        }
        if (!found) throw Error(Errc::ParseError, "mechanism.base: unknown rule '" + name + "'");
        if (base_has_tau(m.base)) {
            if (colon == std::string::npos) throw Error(Errc::ParseError, "mechanism.base: " + name + " needs a parameter");
            m.base_tau = parse_rational(b.substr(colon + 1));
        } else if (colon != std::string::npos) {
            throw Error(Errc::ParseError, "mechanism.base: " + name + " takes no parameter");
        }
    }
    for (std::size_t i = 1; i < toks.size(); ++i) {
        const std::string& t = toks[i];
        if (t.rfind("re:", 0) == 0) {
            m.re_tau = parse_rational(t.substr(3));
        } else if (t.rfind("mode:", 0) == 0) {
            std::string v = t.substr(5);
            if (v == "full") m.participation = Participation::Full;
            else if (v == "active") m.participation = Participation::ActiveOnly;
            else if (v == "proxy") m.participation = Participation::Proxy;
            else throw Error(Errc::ParseError, "mechanism.mode: unknown mode '" + v + "'");
        } else if (t == "r-unit") {
            m.r_unit_weight = true;
        } else {
            throw Error(Errc::ParseError, "mechanism: unexpected token '" + t + "'");
        }
    }
    m.validate();
    return m;
}

/// "a,b,c" or "lo:step:hi" (inclusive).
inline std::vector<Rational> parse_grid(const std::string& text, const std::string& field) {
    std::vector<Rational> out;
    try {
        if (std::count(text.begin(), text.end(), ':') == 2) {
            auto a = text.find(':'), b = text.find(':', a + 1);
            Rational lo = parse_rational(text.substr(0, a)), step = parse_rational(text.substr(a + 1, b - a - 1)),
                     hi = parse_rational(text.substr(b + 1));
            if (!(step > 0)) throw Error(Errc::ParseError, "step must be positive");
            for (Rational x = lo; x <= hi; x += step) out.push_back(x);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
        }
    } catch (const Error& e) {
        throw Error(Errc::ParseError, field + ": " + e.what());
    }
    if (out.empty()) throw Error(Errc::ParseError, field + ": empty grid");
    return out;
}

inline std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::string fmt_both(const Rational& x) { return to_string(x) + "," + fmt_double(to_double(x)); }

inline std::int64_t enum_cap() {
    if (const char* v = std::getenv("REALITYVOTE_ENUM_CAP")) {
        try {
            return std::stoll(v);
        } catch (...) {
            throw Error(Errc::ParseError, "REALITYVOTE_ENUM_CAP: not an integer");
        }
    }
    return 10;
}

inline int cmd_eval(const std::string& profile_path, const std::string& spec, std::ostream& out) {
    Profile p = load_profile(profile_path);
    Mechanism m = parse_mechanism(spec);
    Evaluation ev = evaluate(m, p);
    const DomainSpec& d = p.domain();
    out << "format: realityvote-eval/1\n";
    out << "mechanism: " << m.spec() << "\n";
    out << "outcome: " << d.format(ev.outcome) << "\n";
    out << "visible: " << ev.tally.visible << "\n";
    out << "q: " << to_string(ev.tally.q) << "\n";
    out << "tally:\n";
    for (const auto& [b, w] : ev.tally.cast) {
        std::string name;
        if (auto* r = std::get_if<Ranking>(&b)) {
            for (auto i : r->order) name += (name.empty() ? "" : ">") + d.labels()[i];
        } else if (auto* l = std::get_if<Label>(&b)) {
            name = d.labels()[l->index];
        } else if (auto* pt = std::get_if<Point>(&b)) {
            name = d.format(*pt);
        } else {
            name = to_string(std::get<Rational>(b));
        }
        out << "  " << name << ": " << to_string(w) << "\n";
    }
    return kExitOk;
}

inline std::string frontier_header() {
    return "setting,sigma,sigma_dec,mu,mu_dec,tau,tau_dec,alpha_star,alpha_star_dec,beta_star,beta_star_dec,"
           "feasible,tau_lo,tau_lo_dec,tau_hi,tau_hi_dec,status";
}

inline std::string frontier_row(Setting s, const Rational& sigma, const Rational& mu, const std::optional<Rational>& tau) {
    std::string head = std::string(setting_name(s)) + "," + fmt_both(sigma) + "," + fmt_both(mu) + ",";
    try {
        GuaranteeReport g = tau ? report(s, sigma, mu, *tau) : feasibility(s, sigma, mu);
        Rational lo = required_tau(s, sigma, mu, Rational(0)), hi = liveness_tau_bound(s, sigma, mu);
        return head + fmt_both(g.tau) + "," + fmt_both(g.alpha_star) + "," + fmt_both(g.beta_star) + "," +
               (g.feasible_tau ? "1" : "0") + "," + fmt_both(lo) + "," + fmt_both(hi) + ",ok";
    } catch (const Error&) {
        std::string t = tau ? fmt_both(*tau) : std::string(",");
        return head + t + ",,,,,0,,,,,degenerate";
    }
}

inline int cmd_frontier(const std::string& setting, const std::string& sg, const std::string& mg, const std::string& tg,
                        const std::string& out_path, int schema_version, std::ostream& out) {
    if (schema_version != 1) throw Error(Errc::ParseError, "schema-version: only version 1 exists");
    auto s = parse_setting(setting);
    if (!s) throw Error(Errc::ParseError, "setting: unknown setting '" + setting + "'");
    auto sigmas = parse_grid(sg, "sigma-grid");
    auto mus = parse_grid(mg, "mu-grid");
    std::vector<std::optional<Rational>> taus;
    if (tg.empty()) taus.push_back(std::nullopt);
    else
        for (auto& t : parse_grid(tg, "tau-grid")) taus.push_back(t);
    std::ostringstream csv;
    csv << "# realityvote-frontier/1\n" << frontier_header() << "\n";
    for (const auto& a : sigmas)
        for (const auto& b : mus)
            for (const auto& t : taus) csv << frontier_row(*s, a, b, t) << "\n";
    if (out_path.empty() || out_path == "-") {
        out << csv.str();
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw Error(Errc::ParseError, "out: cannot write '" + out_path + "'");
        f << csv.str();
    }
    return kExitOk;
}

struct OracleArgs {
    std::string shape;
    std::string mechanism;
    std::string base = "mj";
    bool liveness = false;
    std::string alternatives;  ///< comma list, status quo first; empty = binary
};

namespace detail {

/// Which closed form describes the mechanism, with the tau it uses.
inline std::optional<std::pair<Setting, Rational>> formula_for(const Mechanism& m) {
    if (m.base == BaseRule::MJ) return std::pair{Setting::ArbitraryBinary, m.re_tau};
    if (m.base == BaseRule::SMJ && m.re_tau == 0) return std::pair{Setting::MultiAltSMJ, m.base_tau};
    return std::nullopt;
}

}  // namespace detail

inline int cmd_oracle(const OracleArgs& a, std::ostream& out) {
    auto parts = parse_grid(a.shape, "shape");
    if (parts.size() != 3 || parts[0].denominator() != 1) throw Error(Errc::ParseError, "shape: expected n,sigma,mu");
    std::int64_t n = parts[0].numerator();
    if (n > enum_cap()) throw Error(Errc::BudgetExceeded, "shape: n exceeds the enumeration cap");
    Shape sh = Shape::of(n, parts[1], parts[2]);
    Mechanism m = parse_mechanism(a.mechanism);
    Mechanism base = parse_mechanism(a.base);
    DomainSpec d = DomainSpec::binary();
    if (!a.alternatives.empty()) {
        std::vector<std::string> alts;
        std::stringstream ss(a.alternatives);
        std::string x;
        while (std::getline(ss, x, ',')) alts.push_back(x);
        d = alts.size() == 2 ? DomainSpec::binary(alts[0], alts[1]) : DomainSpec::categorical(alts, alts[0]);
    }
    const Rational mu_eff = m.participation == Participation::Full ? Rational(0) : parts[2];
    auto f = detail::formula_for(m);
    bool mismatch = false;
    out << "format: realityvote-oracle/1\n";
    out << "shape: " << sh.n << "," << to_string(parts[1]) << "," << to_string(parts[2]) << "\n";
    out << "mechanism: " << m.spec() << "\n";
    if (!a.liveness) {
        out << "base: " << base.spec() << "\n";
        Rational finite = min_alpha(m, base, sh, d);
        out << "finite_min_alpha: " << to_string(finite) << "\n";
        if (f) {
            Rational t = safety_threshold(f->first, parts[1], mu_eff, f->second);
            Rational adj(ceil(t * sh.honest()), sh.honest());
            out << "formula_alpha: " << to_string(t) << "\n";
            out << "adjusted_alpha: " << to_string(adj) << "\n";
            mismatch = adj != finite;
        } else {
            out << "formula_alpha: none\n";
        }
    } else {
        std::optional<Rational> worst = Rational(0);
        for (std::size_t i = 0; i < d.alternative_count(); ++i) {
            if (i == d.status_quo_index()) continue;
            auto b = min_live_beta(m, sh, d, Label{i});
            if (!b) {
                worst.reset();
                break;
            }
            worst = rmax(*worst, *b);
        }
        out << "finite_min_beta: " << (worst ? to_string(*worst) : std::string("none")) << "\n";
        if (f) {
            Rational t = liveness_threshold(f->first, parts[1], mu_eff, f->second);
            std::int64_t base_n = liveness_base_count(m, sh);
            Rational adj(floor(t * base_n) + 1, base_n);
            out << "formula_beta: " << to_string(t) << "\n";
            out << "adjusted_beta: " << to_string(adj) << "\n";
            if (t <= 1) mismatch = !worst || adj != *worst;
            else out << "note: threshold above 1, finite budgets are not comparable\n";
        } else {
            out << "formula_beta: none\n";
        }
    }
    out << "match: " << (mismatch ? "no" : "yes") << "\n";
    return mismatch ? kExitMismatch : kExitOk;
}

struct SimulateArgs {
    std::string kind;
    std::string template_path;
    std::string n_plus;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    std::string tau = "0";
    std::string alpha_prime = "1/100";
    std::string c = "1/20";
    std::string epsilon = "1/10";
    std::string mechanism;
    std::string base = "mj";
    std::string bound;  ///< whp only: rate the gate compares against
    std::string csv;
};

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    if (a.trials <= 0) throw Error(Errc::InvalidArgument, "trials: must be positive");
    if (a.kind != "whp" && a.kind != "proxy" && a.kind != "hoeffding")
        throw Error(Errc::ParseError, "kind: expected whp, proxy or hoeffding");
    Profile templ = load_profile(a.template_path);
    auto ns = parse_grid(a.n_plus, "n-plus");
    Rational tau = parse_rational(a.tau);
    std::ostringstream csv;
    csv << "# realityvote-simulate/1\nkind,n_plus,trials,violations,rate,rate_dec,bound,standard_error,pass\n";
    out << "format: realityvote-simulate/1\nkind: " << a.kind << "\n";
    bool all_pass = true;
    for (const auto& nr : ns) {
        if (nr.denominator() != 1 || nr <= 0) throw Error(Errc::ParseError, "n-plus: expected positive integers");
        auto np = static_cast<std::size_t>(nr.numerator());
        TrialStats st;
        if (a.kind == "hoeffding") {
            st = hoeffding_diagnostic(templ, np, parse_rational(a.epsilon), static_cast<std::size_t>(a.trials), a.seed);
        } else {
            Mechanism m = a.mechanism.empty()
                              ? Mechanism::of(a.kind == "proxy" ? BaseRule::MD : BaseRule::MJ, 0, tau,
                                              a.kind == "proxy" ? Participation::Proxy : Participation::ActiveOnly)
                              : parse_mechanism(a.mechanism);
            Experiment e{templ, m, parse_mechanism(a.kind == "proxy" ? "md" : a.base), parse_rational(a.alpha_prime),
                         static_cast<std::size_t>(a.trials), a.seed, np};
            if (a.kind == "proxy") {
                st = run_proxy_whp(e, parse_rational(a.c));
            } else {
                st = run_safety_whp(e);
                if (!a.bound.empty()) st.bound_value = to_double(parse_rational(a.bound));
            }
        }
        bool pass = st.passes();
        all_pass = all_pass && pass;
        out << "n_plus: " << np << " trials: " << st.trials << " violations: " << st.violation_count
            << " rate: " << to_string(st.empirical_rate) << " (" << fmt_double(to_double(st.empirical_rate)) << ")"
            << " bound: " << fmt_double(st.bound_value) << " se: " << fmt_double(st.standard_error);
        if (a.kind == "proxy") out << " y_c: " << st.event_count;
        out << " gate: " << (pass ? "pass" : "fail") << "\n";
        csv << a.kind << "," << np << "," << st.trials << "," << st.violation_count << "," << fmt_both(st.empirical_rate)
            << "," << fmt_double(st.bound_value) << "," << fmt_double(st.standard_error) << "," << (pass ? 1 : 0) << "\n";
    }
    if (!a.csv.empty()) {
        std::ofstream f(a.csv, std::ios::binary);
        if (!f) throw Error(Errc::ParseError, "csv: cannot write '" + a.csv + "'");
        f << csv.str();
    }
    return all_pass ? kExitOk : kExitStatistical;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"realityvote: reality-enforcing voting mechanisms"};
    app.require_subcommand(1);

    std::string profile_path, spec;
    auto* eval = app.add_subcommand("eval", "evaluate a mechanism on a profile");
    eval->add_option("--profile", profile_path)->required();
    eval->add_option("--mechanism", spec)->required();

    std::string setting, sg, mg, tg, out_path;
    int schema = 1;
    auto* fr = app.add_subcommand("frontier", "tabulate guarantees over a parameter grid");
    fr->add_option("--setting", setting)->required();
    fr->add_option("--sigma-grid", sg)->required();
    fr->add_option("--mu-grid", mg)->required();
    fr->add_option("--tau-grid", tg);
    fr->add_option("--out", out_path);
    fr->add_option("--schema-version", schema);

    OracleArgs oa;
    auto* orc = app.add_subcommand("oracle", "compare brute force with the closed forms");
    orc->add_option("--shape", oa.shape)->required();
    orc->add_option("--mechanism", oa.mechanism)->required();
    orc->add_option("--base", oa.base);
    orc->add_flag("--liveness", oa.liveness);
    orc->add_option("--alternatives", oa.alternatives);

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "random participation experiments");
    sim->add_option("--kind", sa.kind)->required();
    sim->add_option("--template", sa.template_path)->required();
    sim->add_option("--n-plus", sa.n_plus)->required();
    sim->add_option("--trials", sa.trials)->required();
    sim->add_option("--seed", sa.seed);
    sim->add_option("--tau", sa.tau);
    sim->add_option("--alpha-prime", sa.alpha_prime);
    sim->add_option("--c", sa.c);
    sim->add_option("--epsilon", sa.epsilon);
    sim->add_option("--mechanism", sa.mechanism);
    sim->add_option("--base", sa.base);
    sim->add_option("--bound", sa.bound);
    sim->add_option("--csv", sa.csv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
    try {
        if (*eval) return cmd_eval(profile_path, spec, out);
        if (*fr) return cmd_frontier(setting, sg, mg, tg, out_path, schema, out);
        if (*orc) return cmd_oracle(oa, out);
        if (*sim) return cmd_simulate(sa, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e.code());
    }
    return kExitInput;
}

}  // namespace realityvote
