#include "etfkit/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

namespace etfkit {

namespace fs = std::filesystem;

json element_json(const AbelianGroup& G, Index i) { return G.residues(i); }

Index element_from_json(const AbelianGroup& G, const json& j) {
    std::vector<std::int64_t> r;
    if (j.is_number_integer()) {
        r.push_back(j.get<std::int64_t>());
    } else {
        r = j.get<std::vector<std::int64_t>>();
    }
    if (r.size() != G.rank()) throw InvalidArgument("element " + j.dump() + " has the wrong number of components");
    for (std::size_t c = 0; c < r.size(); ++c)
        if (r[c] < 0 || r[c] >= G.cyclic_orders()[c]) throw InvalidArgument("element " + j.dump() + " is out of range");
    return G.index(GroupElement{r});
}

json set_to_json(const GroupSubset& D, const std::optional<Subgroup>& H) {
    const AbelianGroup& G = D.group();
    json j;
    j["schema_version"] = kSchemaVersion;
    j["group"] = {{"cyclic_orders", G.cyclic_orders()}};
    json elems = json::array();
    for (const Index d : D.elements()) elems.push_back(element_json(G, d));
    j["elements"] = elems;
    if (D.display_order() != D.elements()) {
        json order = json::array();
        for (const Index d : D.display_order()) order.push_back(element_json(G, d));
        j["display_order"] = order;
    }
    if (H) {
        json sub = json::array();
        for (const Index h : H->elements()) sub.push_back(element_json(G, h));
        j["subgroup"] = sub;
    }
    return j;
}

SetFile set_from_json(const json& j) {
    if (!j.contains("group") || !j.contains("elements")) throw InvalidArgument("set file needs 'group' and 'elements'");
    if (j.contains("schema_version") && j["schema_version"].get<int>() > kSchemaVersion)
        throw InvalidArgument("unsupported set file schema_version");
    const AbelianGroup G(j["group"].at("cyclic_orders").get<std::vector<std::int64_t>>());
    std::vector<Index> elems;
    for (const auto& e : j["elements"]) elems.push_back(element_from_json(G, e));
    GroupSubset D(G, elems);
    if (j.contains("display_order")) {
        std::vector<Index> order;
        for (const auto& e : j["display_order"]) order.push_back(element_from_json(G, e));
        D = D.with_display_order(order);
    }
    std::optional<Subgroup> H;
    if (j.contains("subgroup")) {
        std::vector<Index> sub;
        for (const auto& e : j["subgroup"]) sub.push_back(element_from_json(G, e));
        H = Subgroup(G, sub);
    }
    return {D, H};
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

SetFile read_set_file(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_text(path));
    } catch (const json::exception& e) {
        throw InvalidArgument("cannot parse " + path.string() + ": " + e.what());
    }
    return set_from_json(j);
}

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    fs::create_directories(dir);
    std::random_device rd;
    const fs::path tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidArgument("cannot write " + tmp.string());
        out << content;
        if (!out) throw InvalidArgument("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

// --- exact values -----------------------------------------------------------

json exact_to_json(const ExactScalar& v) {
    if (const auto m = v.as_monomial()) {
        json j{{"num", m->num}, {"den", m->den}, {"root_exp", m->root_exp}, {"root_mod", m->root_mod}};
        if (m->rad != 1) j["rad"] = m->rad;
        return j;
    }
    json j{{"coeffs", v.cyclo().coeffs()}, {"root_mod", v.cyclo().modulus()}, {"den", v.den()}};
    if (v.rad() != 1) j["rad"] = v.rad();
    return j;
}

ExactScalar exact_from_json(const json& j) {
    const std::int64_t rad = j.value("rad", std::int64_t{1});
    if (j.contains("coeffs")) {
        const auto coeffs = j["coeffs"].get<std::vector<std::int64_t>>();
        const auto L = j.at("root_mod").get<std::int64_t>();
        if (static_cast<std::int64_t>(coeffs.size()) != L) throw InvalidArgument("exact value: coefficient count differs from root_mod");
        CyclotomicInt c(L);
        for (std::int64_t e = 0; e < L; ++e) c.add_root(e, coeffs[static_cast<std::size_t>(e)]);
        return {c, j.at("den").get<std::int64_t>(), rad};
    }
    return ExactScalar::from_monomial(Monomial{j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>(),
                                               j.at("root_exp").get<std::int64_t>(),
                                               j.at("root_mod").get<std::int64_t>(), rad});
}

// --- matrices ---------------------------------------------------------------

json matrix_to_json(const ComplexMatrix& M) {
    json entries = json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < M.cols(); ++j) {
            json e{{"re", M(i, j).real()}, {"im", M(i, j).imag()}};
            if (M.has_exact()) e["exact"] = exact_to_json(M.exact(i, j));
            row.push_back(e);
        }
        entries.push_back(row);
    }
    return {{"schema_version", kSchemaVersion}, {"rows", M.row_labels()}, {"cols", M.col_labels()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
    ComplexMatrix M(j.at("rows").get<std::vector<std::string>>(), j.at("cols").get<std::vector<std::string>>());
    const auto& entries = j.at("entries");
    if (entries.size() != M.rows()) throw InvalidArgument("matrix JSON: row count mismatch");
    bool exact = M.rows() > 0 && M.cols() > 0;
    for (std::size_t i = 0; i < M.rows(); ++i) {
        if (entries[i].size() != M.cols()) throw InvalidArgument("matrix JSON: column count mismatch");
        for (std::size_t c = 0; c < M.cols(); ++c) exact = exact && entries[i][c].contains("exact");
    }
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t c = 0; c < M.cols(); ++c) {
            const auto& e = entries[i][c];
            if (exact) M.set_exact(i, c, exact_from_json(e["exact"]));
            M(i, c) = cdouble(e.at("re").get<double>(), e.at("im").get<double>());
        }
    return M;
}

std::string format_complex(cdouble z) {
    char buf[96];
    const double im = z.imag();
    const bool neg = std::signbit(im);
    std::snprintf(buf, sizeof buf, "%.17g%c%.17gi", z.real(), neg ? '-' : '+', neg ? -im : im);
    return buf;
}

cdouble parse_complex(const std::string& text) {
    if (text.empty() || text.back() != 'i') throw InvalidArgument("bad complex entry: " + text);
    std::size_t split = std::string::npos;
    for (std::size_t k = 1; k + 1 < text.size(); ++k)
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') split = k;
    if (split == std::string::npos) throw InvalidArgument("bad complex entry: " + text);
    const std::string re = text.substr(0, split);
    const std::string im = text.substr(split, text.size() - split - 1);
    char* end = nullptr;
    const double r = std::strtod(re.c_str(), &end);
    if (*end != '\0') throw InvalidArgument("bad complex entry: " + text);
    const double i = std::strtod(im.c_str(), &end);
    if (*end != '\0') throw InvalidArgument("bad complex entry: " + text);
    return {r, i};
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char c = line[k];
        if (in_quotes) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                cur += '"';
                ++k;
            } else if (c == '"') {
                in_quotes = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string matrix_to_csv(const ComplexMatrix& M) {
    std::string out;
    for (const auto& c : M.col_labels()) out += "," + quote(c);
    out += "\n";
    for (std::size_t i = 0; i < M.rows(); ++i) {
        out += quote(M.row_labels()[i]);
        for (std::size_t j = 0; j < M.cols(); ++j) out += "," + format_complex(M(i, j));
        out += "\n";
    }
    return out;
}

ComplexMatrix matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("empty CSV matrix");
    auto header = split_csv_line(line);
    header.erase(header.begin());
    std::vector<std::string> row_labels;
    std::vector<std::vector<cdouble>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_line(line);
        if (cells.size() != header.size() + 1) throw InvalidArgument("CSV row has the wrong number of cells");
        row_labels.push_back(cells[0]);
        std::vector<cdouble> row;
        for (std::size_t k = 1; k < cells.size(); ++k) row.push_back(parse_complex(cells[k]));
        rows.push_back(std::move(row));
    }
    ComplexMatrix M(row_labels, header);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < header.size(); ++j) M(i, j) = rows[i][j];
    return M;
}

// --- reports ----------------------------------------------------------------

namespace {

json elements_json(const AbelianGroup& G, const std::vector<Index>& xs) {
    json out = json::array();
    for (const Index x : xs) out.push_back(element_json(G, x));
    return out;
}

template <typename T>
json opt(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json certificate_to_json(const GroupSubset& D, const DesignCertificate& cert) {
    const AbelianGroup& G = D.group();
    json j;
    j["group"] = {{"cyclic_orders", G.cyclic_orders()}, {"order", G.order()}};
    j["size"] = D.size();
    j["is_difference_set"] = cert.is_ds;
    j["lambda"] = opt(cert.lambda);
    if (cert.non_ds_witness) {
        const IntVector counts = difference_counts(D);
        const auto [a, b] = *cert.non_ds_witness;
        j["non_ds_witness"] = {{"g1", element_json(G, a)}, {"count1", counts[a]}, {"g2", element_json(G, b)},
                               {"count2", counts[b]}};
    }
    j["S"] = opt(cert.S);
    j["fine_subgroup"] = cert.fine_subgroup ? elements_json(G, cert.fine_subgroup->elements()) : json(nullptr);
    json table = json::array();
    for (const auto& e : cert.dg)
        table.push_back({{"representative", element_json(G, e.representative)},
                         {"elements", elements_json(G, e.elements)},
                         {"is_difference_set", e.is_difference_set},
                         {"lambda", opt(e.lambda)}});
    j["dg_table"] = table;
    j["is_fine"] = cert.fine_subgroup.has_value();
    j["is_amalgam"] = cert.is_amalgam;
    j["is_composite"] = cert.composite.has_value();
    j["composite"] = cert.composite ? json{{"A", elements_json(G, cert.composite->A.elements())},
                                           {"B", elements_json(G, cert.composite->B.elements())}}
                                    : json(nullptr);
    j["divisibility"] = {{"S_divides_D", cert.s_divides_d},
                         {"S3_divides_D2", cert.s3_divides_d2},
                         {"G_minus_D_divides_D_minus_1", cert.complement_divides}};
    j["notes"] = cert.notes;
    return j;
}

json angle_report_to_json(const AngleReport& r) {
    return {{"singular_values", r.singular_values}, {"principal_angles", r.principal_angles},
            {"chordal_sq", r.chordal_sq},           {"spectral_sq", r.spectral_sq},
            {"inputs_isometric", r.inputs_isometric}};
}

json fusion_report_to_json(const FusionReport& r, const AbelianGroup& G) {
    json pairs = json::array();
    for (const auto& p : r.pairs)
        pairs.push_back({{"gamma1", element_json(G, p.gamma1)},
                         {"gamma2", element_json(G, p.gamma2)},
                         {"angles", angle_report_to_json(p.angles)},
                         {"chordal_residual", p.chordal_residual}});
    return {{"ectff", r.ectff},
            {"eitff", r.eitff},
            {"max_chordal_residual", r.max_chordal_residual},
            {"max_spectral_residual", r.max_spectral_residual},
            {"projector_sum_residual", r.projector_sum_residual},
            {"isometry_residual", r.isometry_residual},
            {"pairs", pairs}};
}

json conference_report_to_json(const ConferenceReport& r) {
    return {{"passed", r.passed},
            {"size", r.size},
            {"S", r.S},
            {"diagonal_residual", r.diagonal_residual},
            {"unimodular_residual", r.unimodular_residual},
            {"gram_residual", r.gram_residual},
            {"circulant_residual", r.circulant_residual},
            {"exact_unimodular", r.exact_unimodular}};
}

}  // namespace etfkit
