#pragma once
// Link-prediction embedding models over the graph's id space: translational
// (TransE), rotational (RotatE), bilinear (DistMult) and complex-bilinear
// (ComplEx) score functions, with negative-sampling SGD training.
//
// Scoring is pure and thread-safe. Training is deterministic for a fixed
// seed when threads == 1; with more workers the batch is sharded and results
// are reproducible only for the same (seed, threads) pair.

#include "kgforge/graph.hpp"
#include "kgforge/rng.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace kgforge {

enum class ModelKind : std::uint32_t {
    transe = 0,
    rotate = 1,
    distmult = 2,
    complex = 3,
};

enum class Norm : std::uint32_t {
    l1 = 0,
    l2 = 1,
};

const char* model_kind_name(ModelKind kind);
ModelKind model_kind_from_name(std::string_view name); // case-insensitive

struct TrainConfig {
    std::size_t epochs = 100;
    std::size_t batch_size = 128;
    double learning_rate = 0.01; // initial rate; decays linearly to 1/10 over the run
    double margin = 1.0;         // margin loss (TransE / RotatE)
    std::size_t negatives_per_positive = 5;
    double l2_weight = 1e-5; // logistic loss (DistMult / ComplEx)
    std::uint64_t seed = 0;
    std::size_t threads = 1;
};

class EmbeddingModel {
public:
    // Entries drawn uniform in [-6/sqrt(dim), +6/sqrt(dim)]; RotatE relation
    // phases uniform in [0, 2*pi). Deterministic for a fixed seed.
    static EmbeddingModel init(ModelKind kind, std::size_t dim, std::size_t n_entities,
                               std::size_t n_relations, std::uint64_t seed, Norm norm = Norm::l2);

    ModelKind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    std::size_t n_entities() const { return n_entities_; }
    std::size_t n_relations() const { return n_relations_; }
    Norm norm() const { return norm_; }
    std::uint64_t seed() const { return seed_; }

    // Reals per table row: 2*dim for complex-valued entity/relation rows,
    // dim otherwise (RotatE relations are dim phases).
    std::size_t entity_width() const;
    std::size_t relation_width() const;

    std::span<const double> entity_row(EntityId id) const;
    std::span<double> entity_row(EntityId id);
    std::span<const double> relation_row(RelationId id) const;
    std::span<double> relation_row(RelationId id);

    // Higher is more plausible. Throws not_found for out-of-range ids.
    double score(EntityId head, RelationId relation, EntityId tail) const;

    // Checkpoint: fixed header + little-endian 64-bit float tables,
    // bit-exact round-trip.
    void save(const std::filesystem::path& path) const;
    static EmbeddingModel load(const std::filesystem::path& path);

    bool operator==(const EmbeddingModel&) const = default;

private:
    EmbeddingModel() = default;

    ModelKind kind_ = ModelKind::transe;
    std::size_t dim_ = 0;
    std::size_t n_entities_ = 0;
    std::size_t n_relations_ = 0;
    Norm norm_ = Norm::l2;
    std::uint64_t seed_ = 0;
    std::vector<double> entity_table_;
    std::vector<double> relation_table_;
};

// Corrupts head or tail with probability 1/2, resampling while the corrupted
// triple is a known true triple; after max_retries the last draw is accepted
// unfiltered. The replacement entity always differs from the original, so
// the result never equals the input triple.
Triple negative_sample(const Triple& triple, std::size_t n_entities, const TripleSet& known,
                       Rng& rng, int max_retries = 100);
Triple negative_sample(const Triple& triple, const KnowledgeGraph& graph, Rng& rng,
                       int max_retries = 100);

// Minibatch SGD: margin ranking loss for TransE/RotatE, softplus logistic
// loss with L2 penalty for DistMult/ComplEx. Returns the mean per-epoch
// loss trace (size == epochs). Throws training_diverged with epoch/batch
// diagnostics when the loss goes non-finite.
std::vector<double> train(EmbeddingModel& model, std::span<const Triple> triples,
                          const TrainConfig& config);

// Compares analytic gradients of the per-sample loss against central finite
// differences (step 1e-5) at seeded random points; returns the max relative
// error over every involved parameter.
double gradient_check(ModelKind kind, std::size_t dim, std::uint64_t seed, Norm norm = Norm::l2);

} // namespace kgforge
