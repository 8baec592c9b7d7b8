#include "grnevo/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "grnevo/rng.hpp"

namespace grnevo {

const Range& CoefficientRanges::operator[](Coefficient c) const noexcept
{
    switch (c) {
    case Coefficient::Hill: return hill;
    case Coefficient::Binding: return binding;
    case Coefficient::Promoter: return promoter;
    case Coefficient::Translation: break;
    }
    return translation;
}

CoefficientRanges CoefficientRanges::bounded() noexcept
{
    return {{-3.0, 3.0}, {0.5, 5.0}, {0.5, 500.0}, {0.5, 5.0}};
}

CoefficientRanges CoefficientRanges::initial() noexcept
{
    return {{-3.0, 3.0}, {1.0, 2.0}, {100.0, 500.0}, {0.5, 5.0}};
}

GrnParameters GrnParameters::zeros(int genes)
{
    if (genes < 0) {
        throw std::invalid_argument("gene count must be nonnegative");
    }
    GrnParameters p;
    p.hill = Eigen::MatrixXd::Zero(genes, genes);
    p.binding = Eigen::MatrixXd::Zero(genes, genes);
    p.promoter = Eigen::VectorXd::Zero(genes);
    p.translation = Eigen::VectorXd::Zero(genes);
    return p;
}

void GrnParameters::validate() const
{
    const auto g = promoter.size();
    if (hill.rows() != g || hill.cols() != g || binding.rows() != g || binding.cols() != g
        || translation.size() != g) {
        throw std::invalid_argument("parameter shapes are inconsistent with gene count "
                                    + std::to_string(g));
    }
    if (!hill.allFinite() || !binding.allFinite() || !promoter.allFinite() || !translation.allFinite()
        || !std::isfinite(basal)) {
        throw std::invalid_argument("parameters contain non-finite values");
    }
}

int GrnParameters::interaction_count() const noexcept
{
    return static_cast<int>((hill.array() != 0.0).count());
}

bool GrnParameters::operator==(const GrnParameters& other) const
{
    auto same = [](const auto& a, const auto& b) {
        return a.rows() == b.rows() && a.cols() == b.cols() && (a.size() == 0 || a == b);
    };
    return basal == other.basal && same(hill, other.hill) && same(binding, other.binding)
        && same(promoter, other.promoter) && same(translation, other.translation);
}

GrnModel::GrnModel(int genes, std::vector<SlotKind> slot_kinds, std::vector<GeneKind> gene_kinds,
                   GrnParameters frozen, CoefficientRanges bounds, CoefficientRanges initial)
    : genes_(genes),
      slot_kinds_(std::move(slot_kinds)),
      gene_kinds_(std::move(gene_kinds)),
      frozen_(std::move(frozen)),
      bounds_(bounds),
      initial_(initial)
{
    if (genes_ <= 0) {
        throw std::invalid_argument("a model needs at least one gene");
    }
    const auto g = static_cast<std::size_t>(genes_);
    if (slot_kinds_.size() != g * g || gene_kinds_.size() != g) {
        throw std::invalid_argument("slot/gene kind tables do not match gene count");
    }
    if (frozen_.gene_count() != genes_) {
        throw std::invalid_argument("frozen parameter set has wrong gene count");
    }
    frozen_.validate();

    slot_lookup_.assign(g * g, -1);
    for (int j = 0; j < genes_; ++j) {
        for (int i = 0; i < genes_; ++i) {
            const auto idx = static_cast<std::size_t>(j) * g + static_cast<std::size_t>(i);
            if (slot_kinds_[idx] == SlotKind::Evolvable) {
                slot_lookup_[idx] = static_cast<int>(slots_.size());
                slots_.push_back({j, i});
            }
            else if (slot_kinds_[idx] == SlotKind::Forbidden) {
                frozen_.hill(j, i) = 0.0;
            }
        }
    }
    for (int i = 0; i < genes_; ++i) {
        if (gene_kinds_[static_cast<std::size_t>(i)] == GeneKind::Evolvable) {
            evolvable_genes_.push_back(i);
        }
    }
}

GrnModel GrnModel::fully_evolvable(int genes, double basal)
{
    const auto g = static_cast<std::size_t>(std::max(genes, 0));
    auto frozen = GrnParameters::zeros(genes);
    frozen.basal = basal;
    return GrnModel(genes, std::vector<SlotKind>(g * g, SlotKind::Evolvable),
                    std::vector<GeneKind>(g, GeneKind::Evolvable), std::move(frozen));
}

SlotKind GrnModel::slot_kind(int source, int target) const
{
    if (source < 0 || source >= genes_ || target < 0 || target >= genes_) {
        throw std::out_of_range("slot index out of range");
    }
    return slot_kinds_[static_cast<std::size_t>(source) * static_cast<std::size_t>(genes_)
                       + static_cast<std::size_t>(target)];
}

GeneKind GrnModel::gene_kind(int gene) const
{
    if (gene < 0 || gene >= genes_) {
        throw std::out_of_range("gene index out of range");
    }
    return gene_kinds_[static_cast<std::size_t>(gene)];
}

int GrnModel::slot_index(int source, int target) const
{
    if (source < 0 || source >= genes_ || target < 0 || target >= genes_) {
        return -1;
    }
    return slot_lookup_[static_cast<std::size_t>(source) * static_cast<std::size_t>(genes_)
                        + static_cast<std::size_t>(target)];
}

Coefficient GrnModel::coefficient_at(std::size_t index) const
{
    if (index < binding_offset()) {
        return Coefficient::Hill;
    }
    if (index < promoter_offset()) {
        return Coefficient::Binding;
    }
    if (index < translation_offset()) {
        return Coefficient::Promoter;
    }
    if (index < genotype_length()) {
        return Coefficient::Translation;
    }
    throw std::out_of_range("genotype index out of range");
}

void GrnModel::check_length(const Genotype& genotype) const
{
    if (genotype.size() != genotype_length()) {
        throw std::invalid_argument("genotype has length " + std::to_string(genotype.size())
                                    + ", model expects " + std::to_string(genotype_length()));
    }
}

GrnParameters GrnModel::decode(const Genotype& genotype) const
{
    check_length(genotype);
    GrnParameters p = frozen_;
    const auto& v = genotype.values;
    const std::size_t s = slots_.size();
    for (std::size_t k = 0; k < s; ++k) {
        p.hill(slots_[k].source, slots_[k].target) = v[k];
        p.binding(slots_[k].source, slots_[k].target) = v[s + k];
    }
    const std::size_t e = evolvable_genes_.size();
    for (std::size_t k = 0; k < e; ++k) {
        p.promoter(evolvable_genes_[k]) = v[2 * s + k];
        p.translation(evolvable_genes_[k]) = v[2 * s + e + k];
    }
    return p;
}

Genotype GrnModel::encode(const GrnParameters& params) const
{
    if (params.gene_count() != genes_) {
        throw std::invalid_argument("parameter set has wrong gene count");
    }
    Genotype g;
    g.values.resize(genotype_length());
    const std::size_t s = slots_.size();
    for (std::size_t k = 0; k < s; ++k) {
        g.values[k] = params.hill(slots_[k].source, slots_[k].target);
        g.values[s + k] = params.binding(slots_[k].source, slots_[k].target);
    }
    const std::size_t e = evolvable_genes_.size();
    for (std::size_t k = 0; k < e; ++k) {
        g.values[2 * s + k] = params.promoter(evolvable_genes_[k]);
        g.values[2 * s + e + k] = params.translation(evolvable_genes_[k]);
    }
    return g;
}

void GrnModel::clamp_in_place(Genotype& genotype) const
{
    check_length(genotype);
    auto& v = genotype.values;
    const std::size_t s = slots_.size();
    const std::size_t e = evolvable_genes_.size();
    for (std::size_t k = 0; k < s; ++k) {
        v[k] = bounds_.hill.clamp(v[k]);
        v[s + k] = bounds_.binding.clamp(v[s + k]);
    }
    for (std::size_t k = 0; k < e; ++k) {
        v[2 * s + k] = bounds_.promoter.clamp(v[2 * s + k]);
        v[2 * s + e + k] = bounds_.translation.clamp(v[2 * s + e + k]);
    }
}

Genotype GrnModel::clamp_bounds(Genotype genotype) const
{
    clamp_in_place(genotype);
    return genotype;
}

int GrnModel::interaction_count(const Genotype& genotype) const
{
    check_length(genotype);
    const auto begin = genotype.values.begin();
    return static_cast<int>(std::count_if(begin, begin + static_cast<std::ptrdiff_t>(slots_.size()),
                                          [](double x) { return x != 0.0; }));
}

int GrnModel::evolved_node_count(const Genotype& genotype) const
{
    check_length(genotype);
    std::vector<bool> touched(static_cast<std::size_t>(genes_), false);
    for (std::size_t k = 0; k < slots_.size(); ++k) {
        if (genotype.values[k] != 0.0) {
            touched[static_cast<std::size_t>(slots_[k].source)] = true;
            touched[static_cast<std::size_t>(slots_[k].target)] = true;
        }
    }
    return static_cast<int>(std::count_if(evolvable_genes_.begin(), evolvable_genes_.end(),
                                          [&](int gene) { return touched[static_cast<std::size_t>(gene)]; }));
}

double GrnModel::hill_magnitude(const Genotype& genotype) const
{
    check_length(genotype);
    double sum = 0.0;
    for (std::size_t k = 0; k < slots_.size(); ++k) {
        sum += std::abs(genotype.values[k]);
    }
    return sum;
}

GrnModel compose(std::span<const Subnetwork> subnetworks, int evolvable_gene_count,
                 std::span<const Slot> forbidden, std::span<const Slot> opened, double basal)
{
    if (evolvable_gene_count < 0) {
        throw std::invalid_argument("evolvable gene count must be nonnegative");
    }
    int genes = evolvable_gene_count;
    for (const auto& sub : subnetworks) {
        sub.params.validate();
        genes += sub.params.gene_count();
    }
    if (genes == 0) {
        throw std::invalid_argument("composed model has no genes");
    }
    const auto g = static_cast<std::size_t>(genes);

    // owner[i] = subnetwork index covering gene i, or -1 for evolvable genes.
    std::vector<int> owner(g, -1);
    auto frozen = GrnParameters::zeros(genes);
    frozen.basal = basal;
    for (std::size_t s = 0; s < subnetworks.size(); ++s) {
        const auto& sub = subnetworks[s];
        const int size = sub.params.gene_count();
        if (sub.offset < 0 || sub.offset + size > genes) {
            throw std::invalid_argument("subnetwork " + std::to_string(s) + " does not fit in "
                                        + std::to_string(genes) + " genes");
        }
        for (int a = 0; a < size; ++a) {
            auto& o = owner[static_cast<std::size_t>(sub.offset + a)];
            if (o != -1) {
                throw std::invalid_argument("subnetworks " + std::to_string(o) + " and " + std::to_string(s)
                                            + " overlap at gene " + std::to_string(sub.offset + a));
            }
            o = static_cast<int>(s);
        }
        frozen.hill.block(sub.offset, sub.offset, size, size) = sub.params.hill;
        frozen.binding.block(sub.offset, sub.offset, size, size) = sub.params.binding;
        frozen.promoter.segment(sub.offset, size) = sub.params.promoter;
        frozen.translation.segment(sub.offset, size) = sub.params.translation;
    }

    std::vector<GeneKind> gene_kinds(g);
    for (std::size_t i = 0; i < g; ++i) {
        gene_kinds[i] = owner[i] == -1 ? GeneKind::Evolvable : GeneKind::Frozen;
    }

    auto in_range = [genes](const Slot& s) {
        return s.source >= 0 && s.source < genes && s.target >= 0 && s.target < genes;
    };
    auto at = [g](const Slot& s) {
        return static_cast<std::size_t>(s.source) * g + static_cast<std::size_t>(s.target);
    };

    std::vector<SlotKind> kinds(g * g, SlotKind::Forbidden);
    for (int j = 0; j < genes; ++j) {
        for (int i = 0; i < genes; ++i) {
            const auto oj = owner[static_cast<std::size_t>(j)];
            const auto oi = owner[static_cast<std::size_t>(i)];
            if (oi != -1 && oi == oj) {
                kinds[at({j, i})] = SlotKind::Frozen;
            }
            else if (oi == -1) {
                kinds[at({j, i})] = SlotKind::Evolvable;
            }
        }
    }
    for (const auto& s : opened) {
        if (!in_range(s)) {
            throw std::invalid_argument("opened slot (" + std::to_string(s.source) + ","
                                        + std::to_string(s.target) + ") is out of range");
        }
        if (kinds[at(s)] == SlotKind::Frozen) {
            throw std::invalid_argument("opened slot (" + std::to_string(s.source) + ","
                                        + std::to_string(s.target) + ") lies inside a frozen subnetwork");
        }
        kinds[at(s)] = SlotKind::Evolvable;
    }
    for (const auto& s : forbidden) {
        if (!in_range(s)) {
            throw std::invalid_argument("forbidden slot (" + std::to_string(s.source) + ","
                                        + std::to_string(s.target) + ") is out of range");
        }
        if (kinds[at(s)] == SlotKind::Frozen && frozen.hill(s.source, s.target) != 0.0) {
            throw std::invalid_argument("forbidden slot (" + std::to_string(s.source) + ","
                                        + std::to_string(s.target) + ") overlaps a frozen interaction");
        }
        kinds[at(s)] = SlotKind::Forbidden;
    }
    return GrnModel(genes, std::move(kinds), std::move(gene_kinds), std::move(frozen));
}

Genotype init_genotype(const GrnModel& model, int nonzero_hill_count, Rng& rng)
{
    const auto& init = model.initial_ranges();
    Genotype g;
    g.values.resize(model.genotype_length());
    for (std::size_t k = 0; k < g.values.size(); ++k) {
        const auto& r = init[model.coefficient_at(k)];
        g.values[k] = rng.uniform(r.lo, r.hi);
    }

    const std::size_t slots = model.evolvable_slots().size();
    const auto keep = static_cast<std::size_t>(std::max(nonzero_hill_count, 0));
    if (keep < slots) {
        // Partial Fisher-Yates: the first `slots - keep` entries of the
        // permutation are zeroed.
        std::vector<std::size_t> order(slots);
        std::iota(order.begin(), order.end(), std::size_t{0});
        const std::size_t drop = slots - keep;
        for (std::size_t k = 0; k < drop; ++k) {
            const std::size_t pick = k + rng.index(slots - k);
            std::swap(order[k], order[pick]);
            g.values[model.hill_offset() + order[k]] = 0.0;
        }
    }
    return g;
}

std::string to_string(SlotKind kind)
{
    switch (kind) {
    case SlotKind::Evolvable: return "evolvable";
    case SlotKind::Frozen: return "frozen";
    case SlotKind::Forbidden: break;
    }
    return "forbidden";
}

std::string to_string(GeneKind kind)
{
    return kind == GeneKind::Evolvable ? "evolvable" : "frozen";
}

SlotKind slot_kind_from_string(const std::string& name)
{
    if (name == "evolvable") {
        return SlotKind::Evolvable;
    }
    if (name == "frozen") {
        return SlotKind::Frozen;
    }
    if (name == "forbidden") {
        return SlotKind::Forbidden;
    }
    throw std::invalid_argument("unknown slot kind '" + name + "'");
}

GeneKind gene_kind_from_string(const std::string& name)
{
    if (name == "evolvable") {
        return GeneKind::Evolvable;
    }
    if (name == "frozen") {
        return GeneKind::Frozen;
    }
    throw std::invalid_argument("unknown gene kind '" + name + "'");
}

} // namespace grnevo
