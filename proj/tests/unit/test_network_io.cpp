#include <doctest.h>

#include <filesystem>

#include "grnevo/experiment.hpp"
#include "grnevo/network_io.hpp"
#include "grnevo/rng.hpp"

using namespace grnevo;

namespace {

std::string error_of(const std::string& text)
{
    try {
        (void)network_from_json(text, "net.json");
    }
    catch (const DocumentError& e) {
        return e.what();
    }
    return "";
}

const char* kToggle = R"({
  "genes": ["A", "B"],
  "basal": 0.2,
  "hill": [[0, 2], [2, 0]],
  "binding": [[1, 1], [1, 1]],
  "promoter": [50, 100],
  "translation": [1, 1]
})";

} // namespace

TEST_CASE("reference networks load")
{
    const auto toggle = load_network(data_directory() / "networks" / "toggle.json");
    CHECK(toggle.gene_names == std::vector<std::string>{"A", "B"});
    CHECK(toggle.params.interaction_count() == 2);
    const auto rep = load_network(data_directory() / "networks" / "repressilator.json");
    CHECK(rep.params.gene_count() == 3);
    CHECK(rep.params.interaction_count() == 3);
}

TEST_CASE("network JSON round trip keeps values and slot kinds")
{
    const auto problem = resolve_problem("conditional-oscillator");
    Rng rng(12);
    const auto params = problem.model->decode(init_genotype(*problem.model, 13, rng));
    const auto doc = network_document(params, problem.model.get(), problem.gene_names);
    const auto back = network_from_json(network_to_json(doc));
    CHECK(back.params == params);
    CHECK(back.gene_names == problem.gene_names);
    REQUIRE(back.slot_kinds.has_value());
    CHECK((*back.slot_kinds)[0 * 8 + 1] == SlotKind::Frozen);
    CHECK((*back.slot_kinds)[0 * 8 + 2] == SlotKind::Forbidden);

    const auto path = std::filesystem::temp_directory_path() / "grnevo_roundtrip.json";
    save_network(path, doc);
    CHECK(load_network(path).params == params);
    std::filesystem::remove(path);
}

TEST_CASE("malformed network documents name the location")
{
    CHECK(error_of(kToggle).empty());
    CHECK(error_of("{\"genes\": [\"A\"],").find("line") != std::string::npos);

    std::string unknown = kToggle;
    unknown.insert(1, "\"colour\": 1,");
    CHECK(error_of(unknown).find("colour") != std::string::npos);

    std::string shape = kToggle;
    shape.replace(shape.find("[[0, 2], [2, 0]]"), 16, "[[0, 2, 1], [2, 0]]");
    CHECK(error_of(shape).find("/hill") != std::string::npos);

    std::string range = kToggle;
    range.replace(range.find("[50, 100]"), 9, "[50, 9000]");
    CHECK(error_of(range).find("/promoter/1") != std::string::npos);

    std::string type = kToggle;
    type.replace(type.find("0.2"), 3, "\"x\"");
    CHECK(error_of(type).find("/basal") != std::string::npos);
    CHECK(error_of(type).rfind("net.json", 0) == 0);
}

TEST_CASE("missing network file is reported")
{
    CHECK_THROWS((void)load_network("/nonexistent/net.json"));
}
