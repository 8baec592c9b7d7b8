#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grnevo/model.hpp"

namespace grnevo {

/// Malformed network or problem document. what() names the source and the
/// JSON location (pointer, or line/column for syntax errors).
class DocumentError : public std::runtime_error {
public:
    DocumentError(const std::string& source, const std::string& location, const std::string& message);

    [[nodiscard]] const std::string& location() const noexcept { return location_; }

private:
    std::string location_;
};

/// Network file contents. `slot_kinds`/`gene_kinds` are present when the
/// network was written together with the model it was evolved in.
struct NetworkDocument {
    std::vector<std::string> gene_names;
    GrnParameters params;
    std::optional<std::vector<SlotKind>> slot_kinds;  // row-major (source, target)
    std::optional<std::vector<GeneKind>> gene_kinds;
    CoefficientRanges bounds = CoefficientRanges::bounded();
};

/// Default names g1..gG.
[[nodiscard]] std::vector<std::string> default_gene_names(int genes);

[[nodiscard]] std::string network_to_json(const NetworkDocument& doc);
[[nodiscard]] NetworkDocument network_document(const GrnParameters& params, const GrnModel* model = nullptr,
                                               std::vector<std::string> gene_names = {});

/// Throws DocumentError on any syntax, shape, or value problem.
[[nodiscard]] NetworkDocument network_from_json(const std::string& text, const std::string& source = "<string>");

[[nodiscard]] NetworkDocument load_network(const std::filesystem::path& path);
void save_network(const std::filesystem::path& path, const NetworkDocument& doc);

} // namespace grnevo
