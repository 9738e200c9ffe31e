#include "kgforge/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <thread>
#include <unordered_map>

namespace kgforge {

namespace {

constexpr std::uint32_t kCheckpointVersion = 1;
constexpr char kMagic[4] = {'K', 'G', 'E', 'M'};

double softplus(double x) {
    return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double sigmoid(double x) {
    if (x >= 0.0) {
        double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a + 0x9e3779b97f4a7c15ull * (b + 1);
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

// Sparse per-row gradient accumulator.
struct GradientBuffer {
    std::unordered_map<EntityId, std::vector<double>> entity;
    std::unordered_map<RelationId, std::vector<double>> relation;

    std::vector<double>& entity_row(EntityId id, std::size_t width) {
        auto& row = entity[id];
        if (row.empty()) row.assign(width, 0.0);
        return row;
    }
    std::vector<double>& relation_row(RelationId id, std::size_t width) {
        auto& row = relation[id];
        if (row.empty()) row.assign(width, 0.0);
        return row;
    }
};

// ---- score functions ------------------------------------------------------

double score_transe(const EmbeddingModel& m, const Triple& t) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        double d = h[i] + r[i] - tl[i];
        acc += m.norm() == Norm::l1 ? std::abs(d) : d * d;
    }
    return -(m.norm() == Norm::l1 ? acc : std::sqrt(acc));
}

double score_rotate(const EmbeddingModel& m, const Triple& t) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        double a = h[2 * i], b = h[2 * i + 1];
        double cs = std::cos(r[i]), sn = std::sin(r[i]);
        double u = a * cs - b * sn - tl[2 * i];
        double v = a * sn + b * cs - tl[2 * i + 1];
        double sq = u * u + v * v;
        acc += m.norm() == Norm::l1 ? std::sqrt(sq) : sq;
    }
    return -(m.norm() == Norm::l1 ? acc : std::sqrt(acc));
}

double score_distmult(const EmbeddingModel& m, const Triple& t) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    double acc = 0.0;
    // (h*t)*r keeps score(h,r,t) == score(t,r,h) bit-exact
    for (std::size_t i = 0; i < h.size(); ++i) acc += h[i] * tl[i] * r[i];
    return acc;
}

double score_complex(const EmbeddingModel& m, const Triple& t) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); i += 2) {
        double a = h[i], b = h[i + 1];
        double c = r[i], d = r[i + 1];
        double e = tl[i], f = tl[i + 1];
        acc += e * (a * c - b * d) + f * (a * d + b * c);
    }
    return acc;
}

double score_any(const EmbeddingModel& m, const Triple& t) {
    switch (m.kind()) {
    case ModelKind::transe: return score_transe(m, t);
    case ModelKind::rotate: return score_rotate(m, t);
    case ModelKind::distmult: return score_distmult(m, t);
    case ModelKind::complex: return score_complex(m, t);
    }
    throw Error(ErrorCode::internal, "unknown model kind");
}

// ---- score gradients ------------------------------------------------------
// Each accumulates coeff * d(score)/d(theta) into the buffer.

void score_grad_transe(const EmbeddingModel& m, const Triple& t, double coeff, GradientBuffer& g) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    std::size_t w = h.size();
    std::vector<double> diff(w);
    double acc = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
        diff[i] = h[i] + r[i] - tl[i];
        acc += m.norm() == Norm::l1 ? std::abs(diff[i]) : diff[i] * diff[i];
    }
    auto& gh = g.entity_row(t.head, w);
    auto& gr = g.relation_row(t.relation, w);
    auto& gt = g.entity_row(t.tail, w);
    if (m.norm() == Norm::l1) {
        for (std::size_t i = 0; i < w; ++i) {
            double s = diff[i] > 0 ? 1.0 : (diff[i] < 0 ? -1.0 : 0.0);
            gh[i] += coeff * (-s);
            gr[i] += coeff * (-s);
            gt[i] += coeff * s;
        }
    } else {
        double dist = std::sqrt(acc);
        if (dist == 0.0) return;
        for (std::size_t i = 0; i < w; ++i) {
            double s = diff[i] / dist;
            gh[i] += coeff * (-s);
            gr[i] += coeff * (-s);
            gt[i] += coeff * s;
        }
    }
}

void score_grad_rotate(const EmbeddingModel& m, const Triple& t, double coeff, GradientBuffer& g) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    std::size_t dim = r.size();
    std::vector<double> us(dim), vs(dim), ps(dim), qs(dim);
    double acc = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        double a = h[2 * i], b = h[2 * i + 1];
        double cs = std::cos(r[i]), sn = std::sin(r[i]);
        ps[i] = a * cs - b * sn;
        qs[i] = a * sn + b * cs;
        us[i] = ps[i] - tl[2 * i];
        vs[i] = qs[i] - tl[2 * i + 1];
        double sq = us[i] * us[i] + vs[i] * vs[i];
        acc += m.norm() == Norm::l1 ? std::sqrt(sq) : sq;
    }
    double dist = m.norm() == Norm::l1 ? acc : std::sqrt(acc);
    auto& gh = g.entity_row(t.head, 2 * dim);
    auto& gr = g.relation_row(t.relation, dim);
    auto& gt = g.entity_row(t.tail, 2 * dim);
    for (std::size_t i = 0; i < dim; ++i) {
        // d(dist)/du, d(dist)/dv for the active norm
        double gu, gv;
        if (m.norm() == Norm::l1) {
            double mi = std::sqrt(us[i] * us[i] + vs[i] * vs[i]);
            if (mi == 0.0) continue;
            gu = us[i] / mi;
            gv = vs[i] / mi;
        } else {
            if (dist == 0.0) continue;
            gu = us[i] / dist;
            gv = vs[i] / dist;
        }
        double cs = std::cos(r[i]), sn = std::sin(r[i]);
        // score = -dist
        gh[2 * i] += coeff * -(gu * cs + gv * sn);
        gh[2 * i + 1] += coeff * -(-gu * sn + gv * cs);
        gr[i] += coeff * -(gu * -qs[i] + gv * ps[i]);
        gt[2 * i] += coeff * gu;
        gt[2 * i + 1] += coeff * gv;
    }
}

void score_grad_distmult(const EmbeddingModel& m, const Triple& t, double coeff, GradientBuffer& g) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    std::size_t w = h.size();
    auto& gh = g.entity_row(t.head, w);
    auto& gr = g.relation_row(t.relation, w);
    auto& gt = g.entity_row(t.tail, w);
    for (std::size_t i = 0; i < w; ++i) {
        gh[i] += coeff * r[i] * tl[i];
        gr[i] += coeff * h[i] * tl[i];
        gt[i] += coeff * h[i] * r[i];
    }
}

void score_grad_complex(const EmbeddingModel& m, const Triple& t, double coeff, GradientBuffer& g) {
    auto h = m.entity_row(t.head);
    auto r = m.relation_row(t.relation);
    auto tl = m.entity_row(t.tail);
    std::size_t w = h.size();
    auto& gh = g.entity_row(t.head, w);
    auto& gr = g.relation_row(t.relation, w);
    auto& gt = g.entity_row(t.tail, w);
    for (std::size_t i = 0; i < w; i += 2) {
        double a = h[i], b = h[i + 1];
        double c = r[i], d = r[i + 1];
        double e = tl[i], f = tl[i + 1];
        gh[i] += coeff * (c * e + d * f);
        gh[i + 1] += coeff * (-d * e + c * f);
        gr[i] += coeff * (a * e + b * f);
        gr[i + 1] += coeff * (-b * e + a * f);
        gt[i] += coeff * (a * c - b * d);
        gt[i + 1] += coeff * (a * d + b * c);
    }
}

void accumulate_score_grad(const EmbeddingModel& m, const Triple& t, double coeff,
                           GradientBuffer& g) {
    switch (m.kind()) {
    case ModelKind::transe: score_grad_transe(m, t, coeff, g); return;
    case ModelKind::rotate: score_grad_rotate(m, t, coeff, g); return;
    case ModelKind::distmult: score_grad_distmult(m, t, coeff, g); return;
    case ModelKind::complex: score_grad_complex(m, t, coeff, g); return;
    }
}

bool uses_margin_loss(ModelKind kind) {
    return kind == ModelKind::transe || kind == ModelKind::rotate;
}

// L2 penalty applied per appearance of a row in the sample (positive h, r, t
// plus each negative's replacement entity).
void accumulate_l2(const EmbeddingModel& m, const Triple& pos, std::span<const Triple> negs,
                   double l2_weight, double* loss, GradientBuffer* g) {
    if (l2_weight == 0.0) return;
    auto entity_term = [&](EntityId id) {
        auto row = m.entity_row(id);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (loss) *loss += l2_weight * row[i] * row[i];
            if (g) g->entity_row(id, row.size())[i] += 2.0 * l2_weight * row[i];
        }
    };
    auto relation_term = [&](RelationId id) {
        auto row = m.relation_row(id);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (loss) *loss += l2_weight * row[i] * row[i];
            if (g) g->relation_row(id, row.size())[i] += 2.0 * l2_weight * row[i];
        }
    };
    entity_term(pos.head);
    relation_term(pos.relation);
    entity_term(pos.tail);
    for (const Triple& n : negs) {
        entity_term(n.head == pos.head ? n.tail : n.head);
    }
}

// Per-positive loss with k negatives; gradient accumulation optional.
double sample_loss(const EmbeddingModel& m, const Triple& pos, std::span<const Triple> negs,
                   const TrainConfig& cfg, GradientBuffer* g) {
    double inv_k = negs.empty() ? 0.0 : 1.0 / double(negs.size());
    double loss = 0.0;
    if (uses_margin_loss(m.kind())) {
        double s_pos = score_any(m, pos);
        for (const Triple& neg : negs) {
            double s_neg = score_any(m, neg);
            double hinge = cfg.margin - s_pos + s_neg;
            if (hinge > 0.0) {
                loss += inv_k * hinge;
                if (g) {
                    accumulate_score_grad(m, pos, -inv_k, *g);
                    accumulate_score_grad(m, neg, inv_k, *g);
                }
            }
        }
    } else {
        double s_pos = score_any(m, pos);
        loss += softplus(-s_pos);
        if (g) accumulate_score_grad(m, pos, -sigmoid(-s_pos), *g);
        for (const Triple& neg : negs) {
            double s_neg = score_any(m, neg);
            loss += inv_k * softplus(s_neg);
            if (g) accumulate_score_grad(m, neg, inv_k * sigmoid(s_neg), *g);
        }
        accumulate_l2(m, pos, negs, cfg.l2_weight, &loss, g);
    }
    return loss;
}

void wrap_phases(std::span<double> row) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (double& phase : row) {
        phase = std::fmod(phase, two_pi);
        if (phase < 0.0) phase += two_pi;
    }
}

} // namespace

const char* model_kind_name(ModelKind kind) {
    switch (kind) {
    case ModelKind::transe: return "TransE";
    case ModelKind::rotate: return "RotatE";
    case ModelKind::distmult: return "DistMult";
    case ModelKind::complex: return "ComplEx";
    }
    return "?";
}

ModelKind model_kind_from_name(std::string_view name) {
    std::string lower;
    for (char c : name) lower.push_back(char(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "transe") return ModelKind::transe;
    if (lower == "rotate") return ModelKind::rotate;
    if (lower == "distmult") return ModelKind::distmult;
    if (lower == "complex") return ModelKind::complex;
    throw Error(ErrorCode::invalid_input, "unknown model kind: " + std::string(name));
}

EmbeddingModel EmbeddingModel::init(ModelKind kind, std::size_t dim, std::size_t n_entities,
                                    std::size_t n_relations, std::uint64_t seed, Norm norm) {
    if (dim < 1) throw Error(ErrorCode::invalid_input, "dim must be >= 1");
    if (n_entities == 0 || n_relations == 0) {
        throw Error(ErrorCode::invalid_input, "model needs at least one entity and one relation");
    }
    EmbeddingModel m;
    m.kind_ = kind;
    m.dim_ = dim;
    m.n_entities_ = n_entities;
    m.n_relations_ = n_relations;
    m.norm_ = norm;
    m.seed_ = seed;

    const double bound = 6.0 / std::sqrt(double(dim));
    Rng rng(seed);
    m.entity_table_.resize(n_entities * m.entity_width());
    for (double& v : m.entity_table_) v = rng.uniform(-bound, bound);
    m.relation_table_.resize(n_relations * m.relation_width());
    if (kind == ModelKind::rotate) {
        for (double& v : m.relation_table_) v = rng.uniform(0.0, 2.0 * std::numbers::pi);
    } else {
        for (double& v : m.relation_table_) v = rng.uniform(-bound, bound);
    }
    return m;
}

std::size_t EmbeddingModel::entity_width() const {
    return (kind_ == ModelKind::rotate || kind_ == ModelKind::complex) ? 2 * dim_ : dim_;
}

std::size_t EmbeddingModel::relation_width() const {
    return kind_ == ModelKind::complex ? 2 * dim_ : dim_;
}

std::span<const double> EmbeddingModel::entity_row(EntityId id) const {
    if (id >= n_entities_) throw Error(ErrorCode::not_found, "entity id out of range");
    return {entity_table_.data() + id * entity_width(), entity_width()};
}

std::span<double> EmbeddingModel::entity_row(EntityId id) {
    if (id >= n_entities_) throw Error(ErrorCode::not_found, "entity id out of range");
    return {entity_table_.data() + id * entity_width(), entity_width()};
}

std::span<const double> EmbeddingModel::relation_row(RelationId id) const {
    if (id >= n_relations_) throw Error(ErrorCode::not_found, "relation id out of range");
    return {relation_table_.data() + id * relation_width(), relation_width()};
}

std::span<double> EmbeddingModel::relation_row(RelationId id) {
    if (id >= n_relations_) throw Error(ErrorCode::not_found, "relation id out of range");
    return {relation_table_.data() + id * relation_width(), relation_width()};
}

double EmbeddingModel::score(EntityId head, RelationId relation, EntityId tail) const {
    if (head >= n_entities_ || tail >= n_entities_) {
        throw Error(ErrorCode::not_found, "entity id out of range");
    }
    if (relation >= n_relations_) {
        throw Error(ErrorCode::not_found, "relation id out of range");
    }
    return score_any(*this, Triple{head, relation, tail});
}

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

void write_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    out.write(b, 8);
}

void write_f64(std::ostream& out, double v) { write_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint32_t read_u32(std::istream& in) {
    unsigned char b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

std::uint64_t read_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

} // namespace

void EmbeddingModel::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot open for writing: " + path.string());
    out.write(kMagic, 4);
    write_u32(out, kCheckpointVersion);
    write_u32(out, std::uint32_t(kind_));
    write_u32(out, std::uint32_t(dim_));
    write_u32(out, std::uint32_t(norm_));
    write_u64(out, n_entities_);
    write_u64(out, n_relations_);
    write_u64(out, seed_);
    for (double v : entity_table_) write_f64(out, v);
    for (double v : relation_table_) write_f64(out, v);
    out.flush();
    if (!out) throw Error(ErrorCode::io, "write failure: " + path.string());
}

EmbeddingModel EmbeddingModel::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open for reading: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw Error(ErrorCode::parse, "not a model checkpoint: " + path.string());
    }
    std::uint32_t version = read_u32(in);
    if (version != kCheckpointVersion) {
        throw Error(ErrorCode::parse, "unsupported checkpoint version " + std::to_string(version));
    }
    std::uint32_t kind = read_u32(in);
    std::uint32_t dim = read_u32(in);
    std::uint32_t norm = read_u32(in);
    std::uint64_t n_entities = read_u64(in);
    std::uint64_t n_relations = read_u64(in);
    std::uint64_t seed = read_u64(in);
    if (kind > 3 || norm > 1 || dim == 0 || n_entities == 0 || n_relations == 0 || !in) {
        throw Error(ErrorCode::parse, "corrupt checkpoint header: " + path.string());
    }

    EmbeddingModel m;
    m.kind_ = ModelKind(kind);
    m.dim_ = dim;
    m.n_entities_ = n_entities;
    m.n_relations_ = n_relations;
    m.norm_ = Norm(norm);
    m.seed_ = seed;

    // the declared tables must account for the file exactly
    constexpr std::uint64_t header_bytes = 4 + 4 * 4 + 3 * 8;
    std::uint64_t expected =
        header_bytes + 8 * (n_entities * m.entity_width() + n_relations * m.relation_width());
    std::error_code ec;
    std::uint64_t actual = std::filesystem::file_size(path, ec);
    if (ec || actual != expected) {
        throw Error(ErrorCode::parse, "checkpoint size mismatch: " + path.string());
    }
    m.entity_table_.resize(n_entities * m.entity_width());
    m.relation_table_.resize(n_relations * m.relation_width());
    for (double& v : m.entity_table_) v = read_f64(in);
    for (double& v : m.relation_table_) v = read_f64(in);
    if (!in) throw Error(ErrorCode::parse, "truncated checkpoint: " + path.string());
    return m;
}

Triple negative_sample(const Triple& triple, std::size_t n_entities, const TripleSet& known,
                       Rng& rng, int max_retries) {
    if (n_entities < 2) {
        throw Error(ErrorCode::invalid_input, "negative sampling needs at least 2 entities");
    }
    Triple candidate = triple;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        bool corrupt_head = rng.coin();
        EntityId original = corrupt_head ? triple.head : triple.tail;
        EntityId replacement = EntityId(rng.below(n_entities - 1));
        if (replacement >= original) ++replacement;
        candidate = triple;
        (corrupt_head ? candidate.head : candidate.tail) = replacement;
        if (known.contains(candidate)) continue;
        return candidate;
    }
    return candidate; // retries exhausted: accept unfiltered
}

Triple negative_sample(const Triple& triple, const KnowledgeGraph& graph, Rng& rng,
                       int max_retries) {
    std::size_t n = graph.entities().size();
    if (n < 2) {
        throw Error(ErrorCode::invalid_input, "negative sampling needs at least 2 entities");
    }
    Triple candidate = triple;
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        bool corrupt_head = rng.coin();
        EntityId original = corrupt_head ? triple.head : triple.tail;
        EntityId replacement = EntityId(rng.below(n - 1));
        if (replacement >= original) ++replacement;
        candidate = triple;
        (corrupt_head ? candidate.head : candidate.tail) = replacement;
        if (graph.has_edge(candidate.head, candidate.relation, candidate.tail)) continue;
        return candidate;
    }
    return candidate;
}

namespace {

void validate_train_config(const TrainConfig& cfg) {
    if (cfg.batch_size < 1) throw Error(ErrorCode::invalid_input, "batch_size must be >= 1");
    if (!(cfg.learning_rate > 0.0)) throw Error(ErrorCode::invalid_input, "learning_rate must be > 0");
    if (!(cfg.margin > 0.0)) throw Error(ErrorCode::invalid_input, "margin must be > 0");
    if (cfg.negatives_per_positive < 1) {
        throw Error(ErrorCode::invalid_input, "negatives_per_positive must be >= 1");
    }
    if (cfg.l2_weight < 0.0) throw Error(ErrorCode::invalid_input, "l2_weight must be >= 0");
    if (cfg.threads < 1) throw Error(ErrorCode::invalid_input, "threads must be >= 1");
}

struct BatchResult {
    GradientBuffer grads;
    double loss = 0.0;
};

void process_indices(const EmbeddingModel& model, std::span<const Triple> triples,
                     std::span<const std::size_t> indices, const TripleSet& known,
                     const TrainConfig& cfg, std::uint64_t rng_seed, BatchResult& out) {
    Rng rng(rng_seed);
    std::vector<Triple> negs(cfg.negatives_per_positive);
    for (std::size_t idx : indices) {
        const Triple& pos = triples[idx];
        for (Triple& n : negs) {
            n = negative_sample(pos, model.n_entities(), known, rng);
        }
        out.loss += sample_loss(model, pos, negs, cfg, &out.grads);
    }
}

void apply_gradients(EmbeddingModel& model, const GradientBuffer& grads, double step) {
    for (const auto& [id, grad] : grads.entity) {
        auto row = model.entity_row(id);
        for (std::size_t i = 0; i < row.size(); ++i) row[i] -= step * grad[i];
    }
    for (const auto& [id, grad] : grads.relation) {
        auto row = model.relation_row(id);
        for (std::size_t i = 0; i < row.size(); ++i) row[i] -= step * grad[i];
        if (model.kind() == ModelKind::rotate) wrap_phases(row);
    }
}

} // namespace

std::vector<double> train(EmbeddingModel& model, std::span<const Triple> triples,
                          const TrainConfig& config) {
    if (triples.empty()) throw Error(ErrorCode::invalid_input, "no training triples");
    validate_train_config(config);
    for (const Triple& t : triples) {
        if (t.head >= model.n_entities() || t.tail >= model.n_entities() ||
            t.relation >= model.n_relations()) {
            throw Error(ErrorCode::not_found, "training triple outside the model id space");
        }
    }

    TripleSet known;
    known.reserve(triples.size());
    for (const Triple& t : triples) known.insert(t);

    std::vector<std::size_t> order(triples.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    Rng shuffle_rng(config.seed);
    std::vector<double> epoch_losses;
    epoch_losses.reserve(config.epochs);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle_rng.shuffle(std::span<std::size_t>(order));
        // linear decay to one tenth of the initial rate by the final epoch
        double rate = config.learning_rate *
                      (1.0 - 0.9 * double(epoch) / double(std::max<std::size_t>(1, config.epochs)));
        double epoch_loss = 0.0;
        std::size_t batch_index = 0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size, ++batch_index) {
            std::size_t count = std::min(config.batch_size, order.size() - start);
            std::span<const std::size_t> batch(order.data() + start, count);

            std::size_t workers = std::min(config.threads, count);
            std::vector<BatchResult> results(workers);
            if (workers <= 1) {
                process_indices(model, triples, batch, known, config,
                                mix_seed(config.seed, epoch * 1000003 + batch_index), results[0]);
            } else {
                std::vector<std::thread> pool;
                pool.reserve(workers);
                for (std::size_t w = 0; w < workers; ++w) {
                    std::size_t lo = count * w / workers;
                    std::size_t hi = count * (w + 1) / workers;
                    pool.emplace_back([&, w, lo, hi] {
                        process_indices(model, triples, batch.subspan(lo, hi - lo), known, config,
                                        mix_seed(config.seed, (epoch * 1000003 + batch_index) * 31 + w),
                                        results[w]);
                    });
                }
                for (auto& th : pool) th.join();
            }

            double batch_loss = 0.0;
            for (const BatchResult& r : results) batch_loss += r.loss;
            if (!std::isfinite(batch_loss)) {
                throw Error(ErrorCode::training_diverged,
                            "non-finite loss at epoch " + std::to_string(epoch) + ", batch " +
                                std::to_string(batch_index));
            }
            double step = rate / double(count);
            for (const BatchResult& r : results) apply_gradients(model, r.grads, step);
            epoch_loss += batch_loss;
        }
        epoch_losses.push_back(epoch_loss / double(order.size()));
    }
    return epoch_losses;
}

double gradient_check(ModelKind kind, std::size_t dim, std::uint64_t seed, Norm norm) {
    constexpr std::size_t kEntities = 7;
    constexpr std::size_t kRelations = 3;
    constexpr double kStep = 1e-5;
    constexpr int kSamples = 4;

    TrainConfig cfg;
    cfg.margin = 5.0; // keeps the hinge active at random init
    cfg.l2_weight = 1e-3;
    cfg.negatives_per_positive = 2;

    EmbeddingModel model = EmbeddingModel::init(kind, dim, kEntities, kRelations, seed, norm);
    Rng rng(mix_seed(seed, 0x67726164));
    double max_rel_err = 0.0;

    for (int s = 0; s < kSamples; ++s) {
        Triple pos;
        pos.head = EntityId(rng.below(kEntities));
        pos.tail = EntityId(rng.below(kEntities - 1));
        if (pos.tail >= pos.head) ++pos.tail;
        pos.relation = RelationId(rng.below(kRelations));
        std::vector<Triple> negs(cfg.negatives_per_positive);
        TripleSet known{pos};
        for (Triple& n : negs) n = negative_sample(pos, kEntities, known, rng);

        GradientBuffer analytic;
        sample_loss(model, pos, negs, cfg, &analytic);

        auto check_param = [&](std::span<double> row, std::size_t i, double analytic_grad) {
            double saved = row[i];
            row[i] = saved + kStep;
            double up = sample_loss(model, pos, negs, cfg, nullptr);
            row[i] = saved - kStep;
            double down = sample_loss(model, pos, negs, cfg, nullptr);
            row[i] = saved;
            double numeric = (up - down) / (2.0 * kStep);
            double denom = std::max({std::abs(analytic_grad), std::abs(numeric), 1e-4});
            max_rel_err = std::max(max_rel_err, std::abs(analytic_grad - numeric) / denom);
        };
        for (const auto& [id, grad] : analytic.entity) {
            auto row = model.entity_row(id);
            for (std::size_t i = 0; i < row.size(); ++i) check_param(row, i, grad[i]);
        }
        for (const auto& [id, grad] : analytic.relation) {
            auto row = model.relation_row(id);
            for (std::size_t i = 0; i < row.size(); ++i) check_param(row, i, grad[i]);
        }
    }
    return max_rel_err;
}

} // namespace kgforge
