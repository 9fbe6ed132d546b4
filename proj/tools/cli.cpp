#include "cli.hpp"

#include "ranklab/classical.hpp"
#include "ranklab/cone.hpp"
#include "ranklab/error.hpp"
#include "ranklab/hypothesis.hpp"
#include "ranklab/inequality.hpp"
#include "ranklab/rank_vector.hpp"
#include "ranklab/states.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace ranklab::cli {

namespace {

struct StateArgs {
    std::string file;
    std::string named;
    std::size_t d = 1;
};

void add_state_options(CLI::App* cmd, StateArgs& s) {
    cmd->add_option("state", s.file, "State file");
    auto* named = cmd->add_option("--named", s.named, "Built-in state")->check(CLI::IsMember(named_state_names()));
    cmd->add_option("--d", s.d, "Local dimension parameter of the built-in state")->check(CLI::PositiveNumber);
    named->excludes(cmd->get_option("state"));
}

PureState load(const StateArgs& s) {
    if (!s.named.empty())
        return named_state(s.named, s.d);
    if (s.file.empty())
        throw ContractError("give a state file or --named");
    return load_state(s.file);
}

std::vector<std::string> entropy_strings(const RankVector& rv) {
    std::vector<std::string> out;
    for (auto r : rv.ranks)
        out.push_back(log2_string(r));
    return out;
}

std::string joined(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i)
        out += (i ? sep : "") + parts[i];
    return out;
}

// ---- rankvec ---------------------------------------------------------------

struct RankvecArgs {
    StateArgs state;
    std::string format = "text";
    std::optional<double> renyi;
};

int rankvec(const RankvecArgs& a, std::ostream& out) {
    const PureState psi = load(a.state);
    const RankVector rv = rank_vector(psi);
    const BipartitionIndex index(rv.n);
    std::vector<std::string> approx;
    if (a.renyi) {
        for (auto s : index.subsets()) {
            std::ostringstream v;
            v << std::fixed << std::setprecision(6) << renyi_entropy(psi, s, *a.renyi);
            approx.push_back(v.str());
        }
    }
    std::ostringstream alpha;
    if (a.renyi)
        alpha << *a.renyi;
    if (a.format == "json") {
        nlohmann::ordered_json j;
        j["parties"] = rv.n;
        j["labels"] = index.labels();
        j["ranks"] = rv.ranks;
        j["s0"] = entropy_strings(rv);
        if (a.renyi) {
            std::vector<double> values;
            for (auto& v : approx)
                values.push_back(std::stod(v));
            j["renyi_approx"] = {{"alpha", *a.renyi}, {"values", values}};
        }
        out << j.dump(2) << '\n';
    } else if (a.format == "tsv") {
        out << "quantity\t" << joined(index.labels(), "\t") << '\n';
        std::vector<std::string> ranks;
        for (auto r : rv.ranks)
            ranks.push_back(std::to_string(r));
        out << "rank\t" << joined(ranks, "\t") << '\n';
        out << "S0\t" << joined(entropy_strings(rv), "\t") << '\n';
        if (a.renyi)
            out << "S" << alpha.str() << "~\t" << joined(approx, "\t") << '\n';
    } else {
        out << "labels\t(" << joined(index.labels(), ",") << ")\n";
        out << "ranks\t" << rv.to_string() << '\n';
        out << "S0\t" << rv.entropy_string() << '\n';
        if (a.renyi)
            out << "S" << alpha.str() << "~\t(" << joined(approx, ",") << ")\n";
    }
    return kOk;
}

// ---- audit -----------------------------------------------------------------

struct AuditArgs {
    StateArgs state;
    std::string ineq_file;
    bool include_hypothesis = false;
    bool include_conjectured = false;
    std::string format = "text";
};

int audit(const AuditArgs& a, std::ostream& out) {
    const PureState psi = load(a.state);
    std::vector<RankInequality> list;
    if (!a.ineq_file.empty())
        list = load_inequalities(a.ineq_file);
    else if (psi.party_count() == 4)
        list = known_set(4);
    else
        throw UnsupportedError("the default inequality set is defined for four parties; pass --ineq");
    if (a.include_hypothesis) {
        for (auto& h : instantiate_family(Family::hypothesis, psi.party_count()))
            list.push_back(std::move(h));
    }
    if (a.include_conjectured) {
        if (psi.party_count() != 4)
            throw UnsupportedError("the conjectured inequality is stated for four parties");
        list.push_back(conjectured_inequality());
    }
    const AuditReport report = audit_state(psi, list);
    if (a.format == "json")
        out << report.to_json() << '\n';
    else if (a.format == "tsv")
        out << report.to_tsv();
    else {
        out << "ranks\t" << report.ranks.to_string() << '\n';
        for (const auto& v : report.verdicts) {
            const auto& c = v.certificate;
            out << (c.holds ? "holds   \t" : "VIOLATED\t") << v.inequality.name << '\t' << c.lhs.get_str()
                << (c.holds ? " >= " : " < ") << c.rhs.get_str() << '\t' << v.inequality.rank_form() << '\n';
        }
        out << "violations\t" << report.violations() << " of " << report.verdicts.size() << '\n';
    }
    return report.all_hold() ? kOk : kViolation;
}

// ---- cone ------------------------------------------------------------------

std::size_t parties_for_dim(std::size_t dim) {
    for (std::size_t n = 2; n <= 20; ++n)
        if ((std::size_t{1} << (n - 1)) - 1 == dim)
            return n;
    throw ContractError("dimension " + std::to_string(dim) + " is not 2^(n-1) - 1 for any n");
}

struct ConeArgs {
    std::string first;
    std::string second;
    bool algebraic = false;
    bool families = false;
};

DDOptions dd_options(const ConeArgs& a) {
    DDOptions o;
    if (a.algebraic)
        o.adjacency = AdjacencyTest::algebraic;
    return o;
}

int rays(const ConeArgs& a, std::ostream& out, std::ostream& err) {
    const HRep h = load_hrep(a.first);
    VRep v;
    try {
        v = extreme_rays(h, dd_options(a));
    } catch (const NonPointedError& e) {
        err << "error: " << e.what() << "\nlineality basis:\n";
        for (const auto& l : e.lineality_basis())
            err << to_string(l) << '\n';
        return kUsage;
    }
    if (!a.families) {
        write_vrep(out, v);
        return kOk;
    }
    const std::size_t n = parties_for_dim(v.dim);
    const BipartitionIndex index(n);
    out << "family\t" << joined(index.labels(), "\t") << "\torbit_size\tmembers\n";
    std::size_t i = 0;
    for (const auto& f : orbit_families(v, n)) {
        out << ++i;
        for (const auto& x : f.representative)
            out << '\t' << x.get_str();
        out << '\t' << f.orbit_size << '\t' << f.members.size() << '\n';
    }
    return kOk;
}

int facets_cmd(const ConeArgs& a, std::ostream& out) {
    const FacetResult r = facets(load_vrep(a.first), dd_options(a));
    if (!r.equations.empty())
        out << "# " << r.equations.size() << " equation(s) folded in as opposite row pairs\n";
    write_hrep(out, r.as_hrep());
    return kOk;
}

int gap(const ConeArgs& a, std::ostream& out, std::ostream& err) {
    const HRep known = load_hrep(a.first);
    const VRep attained = load_vrep(a.second);
    std::vector<IntVector> extra;
    try {
        extra = facet_gap(known, attained, dd_options(a));
    } catch (const InternalError&) {
        throw;
    } catch (const ContractError& e) {
        err << "violation: " << e.what() << '\n';
        return kViolation;
    }
    write_hrep(out, HRep(known.dim, extra));
    return kOk;
}

// ---- hunt ------------------------------------------------------------------

struct HuntArgs {
    std::size_t k = 2;
    std::string shape = "2x2,2x2";
    std::optional<std::uint32_t> field;
    std::optional<std::int64_t> bound;
    std::uint64_t samples = 4096;
    std::uint64_t seed = 1;
    std::uint64_t budget = std::uint64_t{1} << 30;
    std::string checkpoint;
    unsigned workers = 1;
    bool no_canonical = false;
    std::uint32_t prime = 65521;
    std::string format = "text";
    bool timing = false;
};

int hunt(const HuntArgs& a, std::ostream& out) {
    const auto [rs, ss] = parse_shapes(a.shape);
    SearchOptions o;
    o.budget = a.budget;
    o.workers = a.workers;
    o.canonicalize = !a.no_canonical;
    o.prescreen_prime = a.prime;
    if (!a.checkpoint.empty())
        o.checkpoint = a.checkpoint;
    const SearchReport report = a.field ? exhaustive_search(a.k, rs, ss, *a.field, o)
                                        : random_search(a.k, rs, ss, *a.bound, a.samples, a.seed, o);
    out << (a.format == "json" ? report.to_json(a.timing) : report.to_text(a.timing));
    return report.counterexamples.empty() && report.prior_counterexamples == 0 ? kOk : kViolation;
}

// ---- classical -------------------------------------------------------------

struct ClassicalArgs {
    std::string file;
};

int classical(const ClassicalArgs& a, std::ostream& out) {
    const SupportSet s = load_support(a.file);
    const ClassicalReport report = audit_classical(s);
    out << report.to_tsv();
    out << "# purification bridge: s_I vs Schmidt rank of I in the (n+1)-party state\n";
    bool bridge_ok = true;
    for (const auto& row : purification_bridge(s)) {
        const bool ok = row.support_size == row.schmidt_rank;
        bridge_ok = bridge_ok && ok;
        out << "bridge\ts_" << coordinate_label(row.coordinates) << '\t' << row.support_size << '\t'
            << row.schmidt_rank << '\t' << (ok ? "equal" : "MISMATCH") << '\n';
    }
    // Both checks are theorems: a failure means a bug, not a finding.
    return report.all_hold() && bridge_ok ? kOk : kInternal;
}

// ---- reproduce -------------------------------------------------------------

struct ReproduceArgs {
    std::string table;
    std::string golden_dir;
};

int reproduce(const ReproduceArgs& a, std::ostream& out, std::ostream& err) {
    const std::string generated = generate_table(a.table);
    out << generated;
    const std::filesystem::path dir = a.golden_dir.empty() ? default_golden_dir() : std::filesystem::path(a.golden_dir);
    const auto path = dir / (a.table + ".tsv");
    std::ifstream in(path);
    if (!in) {
        err << "error: no golden copy at " << path.string() << '\n';
        return kUsage;
    }
    std::stringstream golden;
    golden << in.rdbuf();
    if (golden.str() == generated) {
        err << a.table << ": matches " << path.string() << '\n';
        return kOk;
    }
    err << a.table << ": DIFFERS from " << path.string() << '\n';
    std::istringstream g(golden.str()), n(generated);
    std::string gl, nl;
    for (std::size_t line = 1;; ++line) {
        const bool more_g = static_cast<bool>(std::getline(g, gl));
        const bool more_n = static_cast<bool>(std::getline(n, nl));
        if (!more_g && !more_n)
            break;
        if (!more_g || !more_n || gl != nl) {
            if (more_g)
                err << line << " - " << gl << '\n';
            if (more_n)
                err << line << " + " << nl << '\n';
        }
    }
    return kInternal;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Schmidt rank vectors, rank inequalities and their cones"};
    app.name("ranklab");
    app.require_subcommand(1);
    app.set_version_flag("--version", "ranklab 0.1.0");
    const std::vector<std::string> formats{"text", "tsv", "json"};

    RankvecArgs rv;
    auto* rankvec_cmd = app.add_subcommand("rankvec", "Rank vector and 0-entropy vector of a state");
    add_state_options(rankvec_cmd, rv.state);
    rankvec_cmd->add_option("--format", rv.format)->check(CLI::IsMember(formats));
    rankvec_cmd->add_option("--renyi", rv.renyi, "Also print the (floating) Renyi entropy of this order")
        ->check(CLI::NonNegativeNumber);

    AuditArgs au;
    auto* audit_cmd = app.add_subcommand("audit", "Check rank inequalities on a state");
    add_state_options(audit_cmd, au.state);
    audit_cmd->add_option("--ineq", au.ineq_file, "Inequality file (replaces the known set)")
        ->check(CLI::ExistingFile);
    audit_cmd->add_flag("--include-hypothesis", au.include_hypothesis);
    audit_cmd->add_flag("--include-conjectured", au.include_conjectured);
    audit_cmd->add_option("--format", au.format)->check(CLI::IsMember(formats));

    ConeArgs cr, cf, cg;
    auto* rays_cmd = app.add_subcommand("rays", "Extreme rays of an H-representation");
    rays_cmd->add_option("hfile", cr.first)->required()->check(CLI::ExistingFile);
    rays_cmd->add_flag("--families", cr.families, "Group rays into party-permutation orbits");
    rays_cmd->add_flag("--algebraic", cr.algebraic, "Algebraic adjacency test");
    auto* facets_cmd_ = app.add_subcommand("facets", "Facets of the cone spanned by a V-representation");
    facets_cmd_->add_option("vfile", cf.first)->required()->check(CLI::ExistingFile);
    facets_cmd_->add_flag("--algebraic", cf.algebraic);
    auto* gap_cmd = app.add_subcommand("gap", "Facets of cone(V) missing from H");
    gap_cmd->add_option("hfile", cg.first)->required()->check(CLI::ExistingFile);
    gap_cmd->add_option("vfile", cg.second)->required()->check(CLI::ExistingFile);
    gap_cmd->add_flag("--algebraic", cg.algebraic);

    HuntArgs hu;
    auto* hunt_cmd = app.add_subcommand("hunt", "Search for counterexamples to the matrix-form hypothesis");
    hunt_cmd->add_option("--K", hu.k, "Number of operator pairs")->check(CLI::PositiveNumber);
    hunt_cmd->add_option("--shape", hu.shape, "m1xn1,m2xn2");
    auto* field = hunt_cmd->add_option("--field", hu.field, "Exhaustive search over F_q");
    auto* bound = hunt_cmd->add_option("--rational-bound", hu.bound, "Random integer entries in [-b, b]");
    field->excludes(bound);
    hunt_cmd->add_option("--samples", hu.samples)->check(CLI::PositiveNumber);
    hunt_cmd->add_option("--seed", hu.seed);
    hunt_cmd->add_option("--budget", hu.budget)->check(CLI::PositiveNumber);
    hunt_cmd->add_option("--checkpoint", hu.checkpoint);
    hunt_cmd->add_option("--workers", hu.workers)->check(CLI::Range(1u, 256u));
    hunt_cmd->add_option("--prime", hu.prime, "Prescreen modulus for random search");
    hunt_cmd->add_flag("--no-canonical", hu.no_canonical, "Enumerate every R-list");
    hunt_cmd->add_option("--format", hu.format)->check(CLI::IsMember(std::vector<std::string>{"text", "json"}));
    hunt_cmd->add_flag("--timing", hu.timing, "Append wall time (breaks bit-for-bit reproducibility)");

    ClassicalArgs cl;
    auto* classical_cmd = app.add_subcommand("classical", "Support-size inequalities and the purification bridge");
    classical_cmd->add_option("supportfile", cl.file)->required()->check(CLI::ExistingFile);

    ReproduceArgs re;
    auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate a table and diff it against the golden copy");
    reproduce_cmd->add_option("table", re.table)->required()->check(CLI::IsMember(table_names()));
    reproduce_cmd->add_option("--golden-dir", re.golden_dir);

    std::vector<const char*> argv{"ranklab"};
    for (const auto& s : args)
        argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (hunt_cmd->parsed() && !hu.field && !hu.bound)
            throw CLI::ValidationError("hunt", "one of --field or --rational-bound is required");
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kUsage;
    }

    try {
        if (rankvec_cmd->parsed())
            return rankvec(rv, out);
        if (audit_cmd->parsed())
            return audit(au, out);
        if (rays_cmd->parsed())
            return rays(cr, out, err);
        if (facets_cmd_->parsed())
            return facets_cmd(cf, out);
        if (gap_cmd->parsed())
            return gap(cg, out, err);
        if (hunt_cmd->parsed())
            return hunt(hu, out);
        if (classical_cmd->parsed())
            return classical(cl, out);
        if (reproduce_cmd->parsed())
            return reproduce(re, out, err);
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}

} // namespace ranklab::cli
