// etfkit command-line front end.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or parse error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "etfkit/io.hpp"

namespace fs = std::filesystem;
using namespace etfkit;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
    std::string format = "json";
    bool quiet = false;
};

struct Report {
    json body;
    std::vector<std::string> artifacts;
    bool passed = true;
};

std::string command_echo(int argc, char** argv) {
    std::string out;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) out += ' ';
        out += argv[i];
    }
    return out;
}

std::string write_artifact(const Common& c, const std::string& name, const std::string& content, Report& rep) {
    const fs::path path = fs::path(c.out_dir) / name;
    write_atomic(path, content);
    rep.artifacts.push_back(path.string());
    return path.string();
}

std::string write_matrix(const Common& c, const std::string& stem, const ComplexMatrix& M, Report& rep) {
    if (c.format == "csv") return write_artifact(c, stem + ".csv", matrix_to_csv(M), rep);
    return write_artifact(c, stem + ".json", matrix_to_json(M).dump(1) + "\n", rep);
}

/// Integer lexicographic index, or a residue vector like "1,0" or "(1,0)".
Index parse_gamma(const AbelianGroup& G, const std::string& text) {
    std::string t;
    for (const char ch : text)
        if (ch != '(' && ch != ')' && ch != ' ') t += ch;
    std::vector<std::int64_t> parts;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InvalidArgument("cannot parse character '" + text + "'");
        }
    }
    if (parts.size() == 1 && G.rank() != 1) {
        if (parts[0] < 0 || parts[0] >= G.order()) throw InvalidArgument("character index out of range");
        return parts[0];
    }
    return element_from_json(G, json(parts));
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw InvalidArgument("cannot parse integer list '" + text + "'");
        }
    }
    return out;
}

/// Subgroup from the set file, otherwise the first fine subgroup.
Subgroup require_fine_subgroup(const SetFile& sf) {
    if (sf.subgroup) {
        if (!is_fine_for(sf.set, *sf.subgroup)) throw InvalidArgument("set is not fine for the subgroup in the set file");
        return *sf.subgroup;
    }
    if (!certify_difference_set(sf.set)) throw InvalidArgument("set is not a difference set");
    auto H = is_fine(sf.set);
    if (!H) throw InvalidArgument("set is not fine: no subgroup of order G/(S+1) misses it");
    return *H;
}

json elements_json(const AbelianGroup& G, const std::vector<Index>& xs) {
    json out = json::array();
    for (const Index x : xs) out.push_back(element_json(G, x));
    return out;
}

// --- construct ----------------------------------------------------------------

struct ConstructArgs {
    std::int64_t q = 0;
    std::int64_t j = 2;
    std::string k_orders;
};

int cmd_construct(const std::string& family, const ConstructArgs& a, const Common& c, Report& rep) {
    json params{{"family", family}, {"q", a.q}};
    if (family == "singer") {
        params["j"] = a.j;
        const auto s = singer_complement(a.q, a.j);
        write_artifact(c, "set.json", set_to_json(s.D, s.H).dump(1) + "\n", rep);
        write_artifact(c, "A.json", set_to_json(s.A, s.H).dump(1) + "\n", rep);
        write_artifact(c, "B.json", set_to_json(s.B, s.H).dump(1) + "\n", rep);
        rep.body["certificate"] = certificate_to_json(s.D, classify(s.D, s.H));
    } else if (family == "tpp") {
        const auto t = tpp_complement(a.q);
        write_artifact(c, "set.json", set_to_json(t.D, t.H).dump(1) + "\n", rep);
        rep.body["certificate"] = certificate_to_json(t.D, classify(t.D, t.H));
    } else if (family == "mcfarland") {
        params["j"] = a.j;
        std::optional<std::vector<std::int64_t>> K;
        if (!a.k_orders.empty()) {
            K = parse_int_list(a.k_orders);
            params["k_orders"] = *K;
        }
        const auto m = mcfarland(a.q, a.j, K);
        write_artifact(c, "set.json", set_to_json(m.D, m.H).dump(1) + "\n", rep);
        rep.body["certificate"] = certificate_to_json(m.D, classify(m.D, m.H));
    } else if (family == "srds") {
        const auto s = simplicial_rds_quadratic(a.q);
        write_artifact(c, "set.json", set_to_json(s.A, s.K).dump(1) + "\n", rep);
        const auto p = certify_rds(s.A, s.K, c.tolerance);
        const bool disjoint =
            std::none_of(s.A.elements().begin(), s.A.elements().end(), [&](Index x) { return s.K.contains(x); });
        rep.body["rds"] = p ? json{{"m", p->m}, {"H", p->H}, {"D", p->D}, {"lambda", p->lambda.str()}} : json(nullptr);
        rep.body["disjoint_from_subgroup"] = disjoint;
        rep.passed = p.has_value() && disjoint;
    }
    rep.body["parameters"] = params;
    if (rep.body.contains("certificate")) rep.passed = rep.body["certificate"]["is_difference_set"].get<bool>();
    return rep.passed ? kPass : kFail;
}

// --- classify -----------------------------------------------------------------

int cmd_classify(const SetFile& sf, Report& rep) {
    const DesignCertificate cert = classify(sf.set, sf.subgroup);
    rep.body["certificate"] = certificate_to_json(sf.set, cert);
    rep.passed = cert.is_ds;
    if (!cert.is_ds) rep.body["verdict"] = "not a difference set";
    return rep.passed ? kPass : kFail;
}

// --- frame --------------------------------------------------------------------

int cmd_frame(const SetFile& sf, const std::string& emit, const std::optional<std::string>& gamma_text,
              const Common& c, Report& rep) {
    const GroupSubset& D = sf.set;
    const AbelianGroup& G = D.group();
    rep.body["parameters"] = {{"emit", emit}};
    if (emit == "synthesis" || emit == "gram") {
        ComplexMatrix Phi = harmonic_synthesis(D);
        if (emit == "gram") {
            ComplexMatrix gram = multiply(Phi.adjoint(), Phi, true);
            gram.set_labels(Phi.col_labels(), Phi.col_labels());
            write_matrix(c, "gram", gram, rep);
        } else {
            write_matrix(c, "synthesis", Phi, rep);
        }
        return kPass;
    }
    const Subgroup H = require_fine_subgroup(sf);
    rep.body["subgroup"] = elements_json(G, H.elements());
    if (emit == "psi") {
        write_matrix(c, "psi", simplex_psi(H), rep);
        return kPass;
    }
    std::vector<Index> gammas;
    if (gamma_text) {
        gammas.push_back(parse_gamma(G, *gamma_text));
    } else {
        gammas = subspace_representatives(H);
    }
    json per = json::array();
    for (const Index g : gammas) {
        const ComplexMatrix M = emit == "phi-gamma" ? phi_gamma(D, H, g) : e_gamma(D, H, g);
        const std::string stem = (emit == "phi-gamma" ? "phi_gamma_" : "e_gamma_") + std::to_string(g);
        per.push_back({{"gamma", element_json(G, g)}, {"path", write_matrix(c, stem, M, rep)}});
    }
    rep.body["matrices"] = per;
    return kPass;
}

// --- verify -------------------------------------------------------------------

int verify_conference_set(const SetFile& sf, const std::optional<std::string>& gamma_text, const Common& c,
                          Report& rep) {
    const GroupSubset& D = sf.set;
    const AbelianGroup& G = D.group();
    const Subgroup H = require_fine_subgroup(sf);
    const AmalgamResult am = is_amalgam(D, H);
    rep.body["is_amalgam"] = am.is_amalgam;
    if (!am.is_amalgam) {
        rep.passed = false;
        rep.body["reason"] = am.rejected_by_divisibility ? "S^3 does not divide D^2" : "some D_g is not a difference set";
        return kFail;
    }
    std::vector<Index> gammas =
        gamma_text ? std::vector<Index>{parse_gamma(G, *gamma_text)} : characters_outside_annihilator(H);
    json per = json::array();
    for (const Index g : gammas) {
        const auto C = conference_from_amalgam(D, H, g);
        const ConferenceReport r = verify_conference(C, c.tolerance);
        json e = conference_report_to_json(r);
        e["gamma"] = element_json(G, g);
        per.push_back(e);
        rep.passed = rep.passed && r.passed;
    }
    rep.body["conference"] = per;
    return rep.passed ? kPass : kFail;
}

int cmd_verify(const std::string& check, const std::optional<fs::path>& set_path, const std::optional<fs::path>& matrix_path,
               const std::optional<fs::path>& witness_path, const std::optional<std::string>& gamma_text,
               const Common& c, Report& rep) {
    rep.body["parameters"] = {{"check", check}, {"tolerance", c.tolerance}, {"seed", c.seed}};
    if (check == "conference" && matrix_path) {
        const std::string text = read_text(*matrix_path);
        const ComplexMatrix M = matrix_path->extension() == ".csv" ? matrix_from_csv(text) : matrix_from_json(json::parse(text));
        const ConferenceReport r = verify_conference(M, c.tolerance);
        rep.body["conference"] = conference_report_to_json(r);
        rep.passed = r.passed;
        return rep.passed ? kPass : kFail;
    }
    if (!set_path) throw InvalidArgument("verify needs a set file");
    const SetFile sf = read_set_file(*set_path);
    const GroupSubset& D = sf.set;
    const AbelianGroup& G = D.group();

    if (check == "etf") {
        const ComplexMatrix Phi = harmonic_synthesis(D);
        const double mu = coherence(Phi);
        const double wb = welch_bound(D.size(), G.order());
        const auto tight = check_tight(Phi, c.tolerance);
        rep.body["etf"] = {{"coherence", mu},
                           {"welch_bound", wb},
                           {"coherence_residual", std::abs(mu - wb)},
                           {"tight", tight.has_value()},
                           {"tight_constant", tight ? json(tight->constant) : json(nullptr)},
                           {"tight_residual", tight ? json(tight->residual) : json(nullptr)}};
        rep.passed = tight.has_value() && std::abs(mu - wb) <= c.tolerance;
    } else if (check == "ectff" || check == "eitff") {
        const Subgroup H = require_fine_subgroup(sf);
        const FusionReport r = check == "ectff" ? ectff_check(D, H, c.tolerance) : eitff_check(D, H, c.tolerance);
        rep.body[check] = fusion_report_to_json(r, G);
        rep.passed = check == "ectff" ? r.ectff : r.eitff;
    } else if (check == "triple") {
        const Subgroup H = require_fine_subgroup(sf);
        std::optional<GroupSubset> B;
        if (witness_path) {
            B = read_set_file(*witness_path).set;
        } else if (const auto comp = is_composite(D, H)) {
            B = comp->B;
        }
        const TripleProductReport r = triple_product_check(D, H, B, c.tolerance, c.seed);
        rep.body["triple"] = {{"passed", r.passed},
                              {"triples_checked", r.triples_checked},
                              {"exhaustive", r.exhaustive},
                              {"max_residual", r.max_residual},
                              {"max_zeta_residual", r.max_zeta_residual},
                              {"witness", B ? elements_json(G, B->elements()) : json(nullptr)}};
        if (r.sample_scalar)
            rep.body["triple"]["sample_scalar"] = {{"re", r.sample_scalar->real()}, {"im", r.sample_scalar->imag()}};
        rep.passed = r.passed;
    } else if (check == "unbiased") {
        if (!sf.subgroup) throw InvalidArgument("unbiased check needs a subgroup in the set file");
        const UnbiasedReport r = unbiased_simplices_check(D, *sf.subgroup, c.tolerance);
        rep.body["unbiased"] = {{"passed", r.passed},
                                {"is_simplicial_rds", r.is_simplicial_rds},
                                {"max_simplex_residual", r.max_simplex_residual},
                                {"max_unbiased_residual", r.max_unbiased_residual}};
        rep.passed = r.passed;
    } else if (check == "conference") {
        return verify_conference_set(sf, gamma_text, c, rep);
    }
    return rep.passed ? kPass : kFail;
}

// --- conference ---------------------------------------------------------------

int cmd_conference(const std::string& source, const SetFile& sf, const std::optional<std::string>& gamma_text,
                   bool all_gammas, const Common& c, Report& rep) {
    const GroupSubset& D = sf.set;
    const AbelianGroup& G = D.group();
    Subgroup H;
    if (source == "amalgam") {
        H = require_fine_subgroup(sf);
        if (!is_amalgam(D, H).is_amalgam) throw InvalidArgument("set is not an amalgam for its fine subgroup");
    } else {
        if (!sf.subgroup) throw InvalidArgument("srds source needs a subgroup in the set file");
        H = *sf.subgroup;
        const bool disjoint =
            std::none_of(D.elements().begin(), D.elements().end(), [&](Index x) { return H.contains(x); });
        if (!disjoint || !certify_rds(D, H, c.tolerance)) throw InvalidArgument("set is not a simplicial RDS for its subgroup");
    }
    if (!gamma_text && !all_gammas) throw InvalidArgument("give --gamma or --all-gammas");
    const std::vector<Index> gammas =
        all_gammas ? characters_outside_annihilator(H) : std::vector<Index>{parse_gamma(G, *gamma_text)};
    rep.body["parameters"] = {{"source", source}, {"tolerance", c.tolerance}};
    json per = json::array();
    for (const Index g : gammas) {
        const CirculantConference C = source == "amalgam" ? conference_from_amalgam(D, H, g) : conference_from_srds(D, H, g);
        const ConferenceReport r = verify_conference(C, c.tolerance);
        json e = conference_report_to_json(r);
        e["gamma"] = element_json(G, g);
        e["path"] = write_matrix(c, "conference_" + source + "_" + std::to_string(g), C.materialize(), rep);
        per.push_back(e);
        rep.passed = rep.passed && r.passed;
    }
    rep.body["conference"] = per;
    return rep.passed ? kPass : kFail;
}

SetFile load_set(const std::string& path, const std::string& inline_group, const std::string& inline_elements) {
    if (!path.empty()) return read_set_file(path);
    if (inline_group.empty()) throw InvalidArgument("give a set file or --group/--elements");
    const AbelianGroup G(parse_int_list(inline_group));
    json elems = json::array();
    // Elements separated by ';', residues within an element by ','.
    std::stringstream ss(inline_elements);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) elems.push_back(parse_int_list(item));
    if (G.rank() == 1 && inline_elements.find(';') == std::string::npos) {
        elems = json::array();
        for (const auto v : parse_int_list(inline_elements)) elems.push_back(json::array({v}));
    }
    return set_from_json({{"group", {{"cyclic_orders", G.cyclic_orders()}}}, {"elements", elems}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"etfkit: difference sets, harmonic frames and circulant conference matrices"};
    app.require_subcommand(1);
    Common common;
    app.add_option("--tolerance", common.tolerance, "Numeric tolerance")->capture_default_str();
    app.add_option("--seed", common.seed, "Seed for sampled triple-product checks")->capture_default_str();
    app.add_option("--out-dir", common.out_dir, "Directory for written files")->capture_default_str();
    app.add_option("--format", common.format, "Matrix format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_flag("--quiet", common.quiet, "Do not print the report");

    std::string family;
    ConstructArgs cargs;
    auto* construct = app.add_subcommand("construct", "Build a difference set family");
    construct->add_option("family", family)->required()->check(CLI::IsMember({"singer", "tpp", "mcfarland", "srds"}));
    construct->add_option("--q", cargs.q, "Field order Q")->required();
    construct->add_option("--j", cargs.j, "Extension degree J")->capture_default_str();
    construct->add_option("--k-orders", cargs.k_orders, "McFarland K as comma-separated cyclic orders");

    std::string set_path, inline_group, inline_elements;
    auto* classify_cmd = app.add_subcommand("classify", "Certify a set and decide fine / amalgam / composite");
    classify_cmd->add_option("set", set_path, "Set file");
    classify_cmd->add_option("--group", inline_group, "Cyclic orders, comma-separated");
    classify_cmd->add_option("--elements", inline_elements, "Elements; ';' between elements of non-cyclic groups");

    std::string emit;
    std::optional<std::string> gamma;
    auto* frame = app.add_subcommand("frame", "Export frame matrices");
    frame->add_option("set", set_path, "Set file")->required();
    frame->add_option("--emit", emit)->required()->check(
        CLI::IsMember({"synthesis", "gram", "phi-gamma", "e-gamma", "psi"}));
    frame->add_option("--gamma", gamma, "Character: index or residues");

    std::string check;
    std::string matrix_path, witness_path;
    auto* verify = app.add_subcommand("verify", "Run a verification");
    verify->add_option("set", set_path, "Set file");
    verify->add_option("--check", check)->required()->check(
        CLI::IsMember({"etf", "ectff", "eitff", "triple", "unbiased", "conference"}));
    verify->add_option("--matrix", matrix_path, "Matrix file for --check conference");
    verify->add_option("--witness", witness_path, "Set file with B for --check triple");
    verify->add_option("--gamma", gamma, "Character: index or residues");

    std::string source;
    bool all_gammas = false;
    auto* conference = app.add_subcommand("conference", "Build circulant conference matrices");
    conference->add_option("source", source)->required()->check(CLI::IsMember({"amalgam", "srds"}));
    conference->add_option("set", set_path, "Set file")->required();
    conference->add_option("--gamma", gamma, "Character: index or residues");
    conference->add_flag("--all-gammas", all_gammas, "Every character outside the annihilator");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    Report rep;
    rep.body["schema_version"] = kSchemaVersion;
    rep.body["command"] = command_echo(argc, argv);
    int code = kPass;
    try {
        if (*construct) {
            code = cmd_construct(family, cargs, common, rep);
        } else if (*classify_cmd) {
            code = cmd_classify(load_set(set_path, inline_group, inline_elements), rep);
        } else if (*frame) {
            code = cmd_frame(read_set_file(set_path), emit, gamma, common, rep);
        } else if (*verify) {
            const auto opt_path = [](const std::string& p) { return p.empty() ? std::nullopt : std::optional<fs::path>(p); };
            code = cmd_verify(check, opt_path(set_path), opt_path(matrix_path), opt_path(witness_path), gamma, common, rep);
        } else if (*conference) {
            code = cmd_conference(source, read_set_file(set_path), gamma, all_gammas, common, rep);
        }
    } catch (const InvalidArgument& e) {
        std::cerr << "etfkit: " << e.what() << "\n";
        return kUsage;
    } catch (const SearchNotExhaustive& e) {
        std::cerr << "etfkit: " << e.what() << "\n";
        return kUsage;
    } catch (const json::exception& e) {
        std::cerr << "etfkit: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        std::cerr << "etfkit: internal consistency failure: " << e.what() << "\n";
        return kFail;
    }

    rep.body["passed"] = rep.passed;
    const fs::path report_path = fs::path(common.out_dir) / "report.json";
    rep.artifacts.push_back(report_path.string());
    rep.body["artifacts"] = rep.artifacts;
    try {
        write_atomic(report_path, rep.body.dump(1) + "\n");
    } catch (const std::exception& e) {
        std::cerr << "etfkit: " << e.what() << "\n";
        return kUsage;
    }
    if (!common.quiet) std::cout << rep.body.dump(1) << "\n";
    return code;
}
