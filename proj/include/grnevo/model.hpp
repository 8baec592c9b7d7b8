#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace grnevo {

class Rng;

enum class SlotKind : std::uint8_t { Evolvable, Frozen, Forbidden };
enum class GeneKind : std::uint8_t { Evolvable, Frozen };

/// The four coefficient families of the expression model.
enum class Coefficient : std::uint8_t { Hill, Binding, Promoter, Translation };

struct Range {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] double clamp(double v) const noexcept { return v < lo ? lo : (v > hi ? hi : v); }
    [[nodiscard]] bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

struct CoefficientRanges {
    Range hill;
    Range binding;
    Range promoter;
    Range translation;

    [[nodiscard]] const Range& operator[](Coefficient c) const noexcept;

    /// Hard limits enforced after every variation step.
    [[nodiscard]] static CoefficientRanges bounded() noexcept;
    /// Ranges used for random initialization.
    [[nodiscard]] static CoefficientRanges initial() noexcept;
};

inline constexpr double kDefaultBasalRate = 0.2;

/// Full coefficient set of a network. Matrices are indexed (source, target):
/// hill(j, i) is the exponent with which protein j acts on gene i. A positive
/// exponent represses, a negative one activates, zero means no interaction.
struct GrnParameters {
    Eigen::MatrixXd hill;
    Eigen::MatrixXd binding;
    Eigen::VectorXd promoter;     ///< maximum promoter expression
    Eigen::VectorXd translation;  ///< translation rate
    double basal = kDefaultBasalRate;

    [[nodiscard]] static GrnParameters zeros(int genes);

    [[nodiscard]] int gene_count() const noexcept { return static_cast<int>(promoter.size()); }

    /// Throws std::invalid_argument on inconsistent shapes or non-finite values.
    void validate() const;

    /// Number of nonzero Hill exponents over all slots.
    [[nodiscard]] int interaction_count() const noexcept;

    /// Exact equality, including shapes.
    bool operator==(const GrnParameters& other) const;
};

struct Slot {
    int source = 0;
    int target = 0;

    bool operator==(const Slot&) const = default;
};

/// Flat vector of evolvable coefficients, laid out as
/// [hill(slots) | binding(slots) | promoter(genes) | translation(genes)].
struct Genotype {
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    bool operator==(const Genotype&) const = default;
};

/// Network structure: which interaction slots and which per-gene coefficients
/// are evolved, frozen to a previously found subnetwork, or forbidden.
/// Immutable after construction.
class GrnModel {
public:
    GrnModel(int genes, std::vector<SlotKind> slot_kinds, std::vector<GeneKind> gene_kinds,
             GrnParameters frozen, CoefficientRanges bounds = CoefficientRanges::bounded(),
             CoefficientRanges initial = CoefficientRanges::initial());

    /// A model where every slot and every gene is evolvable.
    [[nodiscard]] static GrnModel fully_evolvable(int genes, double basal = kDefaultBasalRate);

    [[nodiscard]] int gene_count() const noexcept { return genes_; }
    [[nodiscard]] std::size_t genotype_length() const noexcept
    {
        return 2 * slots_.size() + 2 * evolvable_genes_.size();
    }
    [[nodiscard]] double basal_rate() const noexcept { return frozen_.basal; }

    [[nodiscard]] SlotKind slot_kind(int source, int target) const;
    [[nodiscard]] GeneKind gene_kind(int gene) const;
    [[nodiscard]] std::span<const Slot> evolvable_slots() const noexcept { return slots_; }
    [[nodiscard]] std::span<const int> evolvable_genes() const noexcept { return evolvable_genes_; }
    [[nodiscard]] const GrnParameters& frozen() const noexcept { return frozen_; }
    [[nodiscard]] const CoefficientRanges& bounds() const noexcept { return bounds_; }
    [[nodiscard]] const CoefficientRanges& initial_ranges() const noexcept { return initial_; }

    [[nodiscard]] std::size_t hill_offset() const noexcept { return 0; }
    [[nodiscard]] std::size_t binding_offset() const noexcept { return slots_.size(); }
    [[nodiscard]] std::size_t promoter_offset() const noexcept { return 2 * slots_.size(); }
    [[nodiscard]] std::size_t translation_offset() const noexcept
    {
        return 2 * slots_.size() + evolvable_genes_.size();
    }
    [[nodiscard]] Coefficient coefficient_at(std::size_t index) const;

    /// Genotype slot index of an evolvable interaction, or -1.
    [[nodiscard]] int slot_index(int source, int target) const;

    [[nodiscard]] GrnParameters decode(const Genotype& genotype) const;
    /// Extracts the evolvable entries of a full parameter set.
    [[nodiscard]] Genotype encode(const GrnParameters& params) const;

    /// Truncates every coefficient into its bounded range.
    [[nodiscard]] Genotype clamp_bounds(Genotype genotype) const;
    void clamp_in_place(Genotype& genotype) const;

    /// Nonzero evolvable Hill exponents.
    [[nodiscard]] int interaction_count(const Genotype& genotype) const;
    /// Evolvable genes that are source or target of a nonzero evolvable interaction.
    [[nodiscard]] int evolved_node_count(const Genotype& genotype) const;
    /// Sum of |hill| over evolvable slots.
    [[nodiscard]] double hill_magnitude(const Genotype& genotype) const;

private:
    void check_length(const Genotype& genotype) const;

    int genes_ = 0;
    std::vector<SlotKind> slot_kinds_;  // row-major (source, target)
    std::vector<GeneKind> gene_kinds_;
    GrnParameters frozen_;
    CoefficientRanges bounds_;
    CoefficientRanges initial_;
    std::vector<Slot> slots_;
    std::vector<int> slot_lookup_;  // (source, target) -> genotype slot index or -1
    std::vector<int> evolvable_genes_;
};

/// A previously found network embedded with non-evolvable coefficients.
/// Its genes occupy indices [offset, offset + params.gene_count()).
struct Subnetwork {
    GrnParameters params;
    int offset = 0;
};

/// Builds a composite model. Genes covered by subnetworks are frozen together
/// with their internal interactions; the remaining evolvable_gene_count genes
/// are evolved. Slots targeting an evolvable gene are evolvable unless listed in
/// forbidden; slots in opened (evolvable protein onto frozen gene) are also
/// evolvable; all other slots are forbidden.
[[nodiscard]] GrnModel compose(std::span<const Subnetwork> subnetworks, int evolvable_gene_count,
                               std::span<const Slot> forbidden, std::span<const Slot> opened = {},
                               double basal = kDefaultBasalRate);

/// Random genotype: coefficients uniform in the initial ranges, then all but
/// nonzero_hill_count evolvable Hill exponents zeroed at random.
[[nodiscard]] Genotype init_genotype(const GrnModel& model, int nonzero_hill_count, Rng& rng);

[[nodiscard]] std::string to_string(SlotKind kind);
[[nodiscard]] std::string to_string(GeneKind kind);
[[nodiscard]] SlotKind slot_kind_from_string(const std::string& name);
[[nodiscard]] GeneKind gene_kind_from_string(const std::string& name);

} // namespace grnevo
