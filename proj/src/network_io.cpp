#include "grnevo/network_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "grnevo/json_reader.hpp"

namespace grnevo {

using nlohmann::json;
using detail::JsonNode;

DocumentError::DocumentError(const std::string& source, const std::string& location, const std::string& message)
    : std::runtime_error(source + ": " + location + ": " + message), location_(location)
{
}

namespace detail {

json parse_document(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    }
    catch (const json::parse_error& e) {
        const std::size_t byte = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        std::size_t line = 1;
        std::size_t column = 1;
        for (std::size_t k = 0; k < byte; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            }
            else {
                ++column;
            }
        }
        throw DocumentError(source, "line " + std::to_string(line) + ", column " + std::to_string(column),
                            "invalid JSON syntax");
    }
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace detail

std::vector<std::string> default_gene_names(int genes)
{
    std::vector<std::string> names;
    for (int i = 0; i < genes; ++i) {
        names.push_back("g" + std::to_string(i + 1));
    }
    return names;
}

NetworkDocument network_document(const GrnParameters& params, const GrnModel* model,
                                 std::vector<std::string> gene_names)
{
    NetworkDocument doc;
    const int g = params.gene_count();
    doc.gene_names = gene_names.empty() ? default_gene_names(g) : std::move(gene_names);
    doc.params = params;
    if (model != nullptr) {
        std::vector<SlotKind> slots;
        std::vector<GeneKind> genes;
        for (int j = 0; j < g; ++j) {
            for (int i = 0; i < g; ++i) {
                slots.push_back(model->slot_kind(j, i));
            }
            genes.push_back(model->gene_kind(j));
        }
        doc.slot_kinds = std::move(slots);
        doc.gene_kinds = std::move(genes);
        doc.bounds = model->bounds();
    }
    return doc;
}

namespace {

json matrix_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vector_json(const Eigen::VectorXd& v)
{
    json out = json::array();
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        out.push_back(v(k));
    }
    return out;
}

json range_json(const Range& r)
{
    return json::array({r.lo, r.hi});
}

Eigen::MatrixXd read_matrix(const JsonNode& node, int genes)
{
    if (node.array_size() != static_cast<std::size_t>(genes)) {
        node.fail("expected " + std::to_string(genes) + " rows");
    }
    Eigen::MatrixXd m(genes, genes);
    for (int r = 0; r < genes; ++r) {
        const JsonNode row = node.at(static_cast<std::size_t>(r));
        if (row.array_size() != static_cast<std::size_t>(genes)) {
            row.fail("expected " + std::to_string(genes) + " columns");
        }
        for (int c = 0; c < genes; ++c) {
            m(r, c) = row.at(static_cast<std::size_t>(c)).number();
        }
    }
    return m;
}

Eigen::VectorXd read_vector(const JsonNode& node, int genes)
{
    if (node.array_size() != static_cast<std::size_t>(genes)) {
        node.fail("expected " + std::to_string(genes) + " entries");
    }
    Eigen::VectorXd v(genes);
    for (int k = 0; k < genes; ++k) {
        v(k) = node.at(static_cast<std::size_t>(k)).number();
    }
    return v;
}

Range read_range(const JsonNode& node)
{
    if (node.array_size() != 2) {
        node.fail("expected [lo, hi]");
    }
    const Range r{node.at(std::size_t{0}).number(), node.at(std::size_t{1}).number()};
    if (!(r.lo <= r.hi)) {
        node.fail("lower bound exceeds upper bound");
    }
    return r;
}

template <typename Kind, typename Parse>
Kind read_kind(const JsonNode& node, Parse parse)
{
    try {
        return parse(node.string());
    }
    catch (const std::invalid_argument& e) {
        node.fail(e.what());
    }
}

// Hill exponents may be exactly zero; binding strengths of absent
// interactions are not range-checked.
void check_matrix(const std::string& source, const std::string& key, const Eigen::MatrixXd& m, const Range& r,
                  const Eigen::MatrixXd* hill)
{
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            const std::string where = key + "/" + std::to_string(a) + "/" + std::to_string(b);
            const double v = m(a, b);
            if (!std::isfinite(v)) {
                throw DocumentError(source, where, "value is not finite");
            }
            const bool skip = hill == nullptr ? v == 0.0 : (*hill)(a, b) == 0.0;
            if (!skip && !r.contains(v)) {
                throw DocumentError(source, where, "value outside bounds");
            }
        }
    }
}

void check_vector(const std::string& source, const std::string& key, const Eigen::VectorXd& v, const Range& r)
{
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (!std::isfinite(v(k)) || !r.contains(v(k))) {
            throw DocumentError(source, key + "/" + std::to_string(k), "value outside bounds");
        }
    }
}

} // namespace

std::string network_to_json(const NetworkDocument& doc)
{
    const auto& p = doc.params;
    const int g = p.gene_count();
    json out;
    out["genes"] = doc.gene_names;
    out["basal"] = p.basal;
    out["hill"] = matrix_json(p.hill);
    out["binding"] = matrix_json(p.binding);
    out["promoter"] = vector_json(p.promoter);
    out["translation"] = vector_json(p.translation);
    if (doc.slot_kinds) {
        json rows = json::array();
        for (int j = 0; j < g; ++j) {
            json row = json::array();
            for (int i = 0; i < g; ++i) {
                row.push_back(to_string((*doc.slot_kinds)[static_cast<std::size_t>(j * g + i)]));
            }
            rows.push_back(std::move(row));
        }
        out["slot_kind"] = std::move(rows);
    }
    if (doc.gene_kinds) {
        json kinds = json::array();
        for (const auto k : *doc.gene_kinds) {
            kinds.push_back(to_string(k));
        }
        out["gene_kind"] = std::move(kinds);
    }
    out["bounds"] = {{"hill", range_json(doc.bounds.hill)},
                     {"binding", range_json(doc.bounds.binding)},
                     {"promoter", range_json(doc.bounds.promoter)},
                     {"translation", range_json(doc.bounds.translation)}};
    return out.dump(2) + "\n";
}

NetworkDocument network_from_json(const std::string& text, const std::string& source)
{
    const json root_value = detail::parse_document(text, source);
    const JsonNode root(root_value, "", source);
    root.only_keys({"genes", "basal", "hill", "binding", "promoter", "translation", "slot_kind", "gene_kind",
                    "bounds", "description"});

    NetworkDocument doc;
    const JsonNode genes = root.at("genes");
    const auto g = static_cast<int>(genes.array_size());
    if (g == 0) {
        genes.fail("network needs at least one gene");
    }
    for (int k = 0; k < g; ++k) {
        doc.gene_names.push_back(genes.at(static_cast<std::size_t>(k)).string());
    }

    auto& p = doc.params;
    p.basal = root.has("basal") ? root.at("basal").number() : kDefaultBasalRate;
    p.hill = read_matrix(root.at("hill"), g);
    p.binding = read_matrix(root.at("binding"), g);
    p.promoter = read_vector(root.at("promoter"), g);
    p.translation = read_vector(root.at("translation"), g);

    if (root.has("bounds")) {
        const JsonNode b = root.at("bounds");
        b.only_keys({"hill", "binding", "promoter", "translation"});
        doc.bounds.hill = read_range(b.at("hill"));
        doc.bounds.binding = read_range(b.at("binding"));
        doc.bounds.promoter = read_range(b.at("promoter"));
        doc.bounds.translation = read_range(b.at("translation"));
    }

    if (root.has("slot_kind")) {
        const JsonNode rows = root.at("slot_kind");
        if (rows.array_size() != static_cast<std::size_t>(g)) {
            rows.fail("expected " + std::to_string(g) + " rows");
        }
        std::vector<SlotKind> kinds;
        for (int j = 0; j < g; ++j) {
            const JsonNode row = rows.at(static_cast<std::size_t>(j));
            if (row.array_size() != static_cast<std::size_t>(g)) {
                row.fail("expected " + std::to_string(g) + " columns");
            }
            for (int i = 0; i < g; ++i) {
                const JsonNode cell = row.at(static_cast<std::size_t>(i));
                const auto kind = read_kind<SlotKind>(cell, slot_kind_from_string);
                if (kind == SlotKind::Forbidden && p.hill(j, i) != 0.0) {
                    cell.fail("forbidden slot has a nonzero Hill exponent");
                }
                kinds.push_back(kind);
            }
        }
        doc.slot_kinds = std::move(kinds);
    }
    if (root.has("gene_kind")) {
        const JsonNode node = root.at("gene_kind");
        if (node.array_size() != static_cast<std::size_t>(g)) {
            node.fail("expected " + std::to_string(g) + " entries");
        }
        std::vector<GeneKind> kinds;
        for (int k = 0; k < g; ++k) {
            kinds.push_back(read_kind<GeneKind>(node.at(static_cast<std::size_t>(k)), gene_kind_from_string));
        }
        doc.gene_kinds = std::move(kinds);
    }

    check_matrix(source, "/hill", p.hill, doc.bounds.hill, nullptr);
    check_matrix(source, "/binding", p.binding, doc.bounds.binding, &p.hill);
    check_vector(source, "/promoter", p.promoter, doc.bounds.promoter);
    check_vector(source, "/translation", p.translation, doc.bounds.translation);
    if (!std::isfinite(p.basal) || p.basal < 0.0) {
        throw DocumentError(source, "/basal", "basal rate must be a finite non-negative number");
    }
    return doc;
}

NetworkDocument load_network(const std::filesystem::path& path)
{
    return network_from_json(detail::read_text_file(path), path.string());
}

void save_network(const std::filesystem::path& path, const NetworkDocument& doc)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    out << network_to_json(doc);
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

} // namespace grnevo
