#include <doctest.h>

#include <set>

#include "grnevo/experiment.hpp"
#include "grnevo/model.hpp"
#include "grnevo/network_io.hpp"
#include "grnevo/rng.hpp"

using namespace grnevo;

namespace {

GrnParameters toggle() { return load_network(data_directory() / "networks" / "toggle.json").params; }
GrnParameters repressilator() { return load_network(data_directory() / "networks" / "repressilator.json").params; }

int nonzero_hill(const GrnModel& model, const Genotype& g)
{
    int n = 0;
    for (std::size_t s = 0; s < model.evolvable_slots().size(); ++s) {
        n += g.values[model.hill_offset() + s] != 0.0 ? 1 : 0;
    }
    return n;
}

} // namespace

TEST_CASE("six evolvable genes without subnetworks give a genotype of length 84")
{
    const auto model = compose({}, 6, {});
    CHECK(model.gene_count() == 6);
    CHECK(model.genotype_length() == 84);
    CHECK(GrnModel::fully_evolvable(6).genotype_length() == 84);
}

TEST_CASE("a lone frozen subnetwork has nothing to evolve")
{
    const std::vector<Subnetwork> subs{{repressilator(), 0}};
    const auto model = compose(subs, 0, {});
    CHECK(model.genotype_length() == 0);
    for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) {
            CHECK(model.slot_kind(j, i) != SlotKind::Evolvable);
        }
    }
    CHECK(model.decode(Genotype{}) == model.frozen());
    CHECK(model.frozen().hill == repressilator().hill);
}

TEST_CASE("conditional oscillator mask matches an enumeration of evolvable slots")
{
    const auto problem = resolve_problem("conditional-oscillator");
    const auto& model = *problem.model;
    CHECK(model.gene_count() == 8);

    std::size_t evolvable = 0;
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            const auto kind = model.slot_kind(j, i);
            if (kind == SlotKind::Evolvable) {
                ++evolvable;
            }
            const bool toggle_j = j < 2;
            const bool toggle_i = i < 2;
            const bool rep_j = j >= 2 && j < 5;
            const bool rep_i = i >= 2 && i < 5;
            if ((toggle_j && rep_i) || (rep_j && toggle_i)) {
                CHECK(kind == SlotKind::Forbidden);
            }
            if ((toggle_j && toggle_i) || (rep_j && rep_i)) {
                CHECK(kind == SlotKind::Frozen);
            }
        }
    }
    CHECK(evolvable == model.evolvable_slots().size());
    CHECK(model.genotype_length() == 2 * evolvable + 2 * model.evolvable_genes().size());
    CHECK(model.genotype_length() == 36);
}

TEST_CASE("dual oscillator mask gives a genotype of length 84")
{
    const auto problem = resolve_problem("dual-oscillator");
    CHECK(problem.model->gene_count() == 9);
    CHECK(problem.model->genotype_length() == 84);
}

TEST_CASE("compose rejects overlapping subnetworks and forbidding a frozen interaction")
{
    const std::vector<Subnetwork> overlap{{toggle(), 0}, {repressilator(), 1}};
    CHECK_THROWS_AS((void)compose(overlap, 3, {}), std::invalid_argument);

    const std::vector<Subnetwork> subs{{toggle(), 0}};
    const std::vector<Slot> bad{{0, 1}};
    CHECK_THROWS_AS((void)compose(subs, 3, bad), std::invalid_argument);
}

TEST_CASE("decode with all evolvable Hill exponents at zero keeps only frozen interactions")
{
    const auto problem = resolve_problem("conditional-oscillator");
    const auto& model = *problem.model;
    Genotype g{std::vector<double>(model.genotype_length(), 1.0)};
    for (std::size_t s = 0; s < model.evolvable_slots().size(); ++s) {
        g.values[model.hill_offset() + s] = 0.0;
    }
    const auto p = model.decode(g);
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            if (model.slot_kind(j, i) == SlotKind::Frozen) {
                CHECK(p.hill(j, i) == model.frozen().hill(j, i));
            } else {
                CHECK(p.hill(j, i) == 0.0);
            }
        }
    }
    CHECK(p.basal == model.basal_rate());
}

TEST_CASE("decode then encode is the identity")
{
    const auto problem = resolve_problem("conditional-oscillator");
    Rng rng(11);
    const auto g = init_genotype(*problem.model, 13, rng);
    CHECK(problem.model->encode(problem.model->decode(g)) == g);
    CHECK_THROWS_AS((void)problem.model->decode(Genotype{{1.0, 2.0}}), std::invalid_argument);
}

TEST_CASE("clamp truncates each coefficient into its bounded range")
{
    const auto model = GrnModel::fully_evolvable(2);
    Genotype g{std::vector<double>(model.genotype_length(), 1.0)};
    g.values[model.hill_offset()] = 4.7;
    g.values[model.binding_offset()] = 0.5;
    g.values[model.promoter_offset()] = -10.0;
    g.values[model.translation_offset()] = 9.0;
    const auto c = model.clamp_bounds(g);
    CHECK(c.values[model.hill_offset()] == 3.0);
    CHECK(c.values[model.binding_offset()] == 0.5);
    CHECK(c.values[model.promoter_offset()] == 0.5);
    CHECK(c.values[model.translation_offset()] == 5.0);
}

TEST_CASE("forbidden slots stay zero and frozen slots keep their values after clamp and decode")
{
    const auto problem = resolve_problem("conditional-oscillator");
    const auto& model = *problem.model;
    Genotype g{std::vector<double>(model.genotype_length(), 100.0)};
    const auto p = model.decode(model.clamp_bounds(g));
    for (int j = 0; j < 8; ++j) {
        for (int i = 0; i < 8; ++i) {
            if (model.slot_kind(j, i) == SlotKind::Forbidden) {
                CHECK(p.hill(j, i) == 0.0);
            }
            if (model.slot_kind(j, i) == SlotKind::Frozen) {
                CHECK(p.hill(j, i) == model.frozen().hill(j, i));
                CHECK(p.binding(j, i) == model.frozen().binding(j, i));
            }
        }
    }
}

TEST_CASE("random initialization hits the density target and stays in the initial ranges")
{
    const auto bistable = resolve_problem("bistable");
    const auto cond = resolve_problem("conditional-oscillator");
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const auto g = init_genotype(*bistable.model, bistable.nonzero_for(Density::Dense), rng);
        CHECK(nonzero_hill(*bistable.model, g) == 33);
        const auto& init = bistable.model->initial_ranges();
        for (std::size_t k = 0; k < g.size(); ++k) {
            const auto coef = bistable.model->coefficient_at(k);
            const double v = g.values[k];
            if (coef == Coefficient::Hill && v == 0.0) {
                continue;
            }
            CHECK(init[coef].contains(v));
        }
        const auto s = init_genotype(*cond.model, cond.nonzero_for(Density::Sparse), rng);
        CHECK(nonzero_hill(*cond.model, s) == 3);
    }
    const auto model = GrnModel::fully_evolvable(3);
    const auto all = init_genotype(model, 9, rng);
    CHECK(nonzero_hill(model, all) == 9);
    const auto more = init_genotype(model, 50, rng);
    CHECK(nonzero_hill(model, more) == 9);
}

TEST_CASE("initialization is reproducible from the seed")
{
    const auto model = GrnModel::fully_evolvable(6);
    Rng a(9);
    Rng b(9);
    CHECK(init_genotype(model, 18, a) == init_genotype(model, 18, b));
}

TEST_CASE("derived seeds differ by stream and key")
{
    std::set<std::uint64_t> seeds;
    for (std::uint64_t k = 0; k < 100; ++k) {
        seeds.insert(derive_seed(1, Stream::Mutation, {k}));
        seeds.insert(derive_seed(1, Stream::Evaluation, {k}));
    }
    CHECK(seeds.size() == 200);
    CHECK(derive_seed(3, Stream::Init, {1, 2}) == derive_seed(3, Stream::Init, {1, 2}));
}

TEST_CASE("interaction and node counts")
{
    const auto model = GrnModel::fully_evolvable(4);
    Genotype g{std::vector<double>(model.genotype_length(), 1.0)};
    for (std::size_t s = 0; s < model.evolvable_slots().size(); ++s) {
        g.values[s] = 0.0;
    }
    g.values[static_cast<std::size_t>(model.slot_index(0, 1))] = 2.0;
    g.values[static_cast<std::size_t>(model.slot_index(1, 2))] = -1.5;
    CHECK(model.interaction_count(g) == 2);
    CHECK(model.evolved_node_count(g) == 3);
    CHECK(model.hill_magnitude(g) == doctest::Approx(3.5));
}
