#include "rsclust/rs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rsclust/geometry.hpp"
#include "rsclust/parallel.hpp"
#include "rsclust/partitions.hpp"

namespace rsclust {

namespace detail {

namespace {
bool within_tol(double value, double best) {
    // value >= best; same rule as rel_close but one-sided
    const double scale = std::max(1.0, std::max(value, best));
    return value - best <= 1e-9 * scale;
}
}  // namespace

void ArgminTracker::offer(std::uint64_t index, double value, const Candidate& candidate) {
    if (!has_value_ || value < best_value_) {
        best_value_ = value;
        has_value_ = true;
    }
    if (within_tol(value, best_value_)) {
        near_.push_back(Entry{index, value, candidate});
        if (near_.size() > 64) prune();
    }
}

void ArgminTracker::prune() {
    std::erase_if(near_, [&](const Entry& e) { return !within_tol(e.value, best_value_); });
}

const Candidate& ArgminTracker::winner(std::uint64_t& index_out, double& value_out) const {
    const Entry* best = nullptr;
    for (const Entry& e : near_) {
        if (!within_tol(e.value, best_value_)) continue;
        if (best == nullptr || e.index < best->index) best = &e;
    }
    if (best == nullptr) throw DegenerateSampleError("no candidate survived evaluation");
    index_out = best->index;
    value_out = best->value;
    return best->candidate;
}

namespace {

// Layouts of X shared by every candidate evaluation in one run: the rows as
// stored, a column-major (transposed) copy, and the squared row norms.
struct EvalInput {
    const double* rows = nullptr;  // n * d
    const double* cols = nullptr;  // d * n
    const double* norms = nullptr; // n
    std::size_t n = 0;
    std::size_t d = 0;
};

struct EvalScratch {
    std::vector<double> prods;      // k * tile products x.c_j
    std::vector<double> sums;       // k * d
    std::vector<std::int64_t> cnt;  // k
    std::vector<double> cnorm;      // k
    std::vector<double> dsum;       // k
};

// Fused candidate valuation: assign every point to its nearest candidate
// center, accumulate per-cluster sums and assigned-center SSE, then convert
// to the recomputed-mean objective through the centroid identity
//   SSE(X_j, mean_j) = SSE(X_j, c_j) - |X_j| * ||mean_j - c_j||^2.
// Runs single-threaded; the sweeps parallelize across candidates.
double candidate_value(const EvalInput& X, const double* cs, std::size_t k,
                       EvalScratch& ws) {
    const std::size_t n = X.n;
    const std::size_t d = X.d;
    constexpr std::size_t kTile = 256;  // product buffer stays cache-resident
    ws.prods.resize(k * kTile);
    ws.sums.assign(k * d, 0.0);
    ws.cnt.assign(k, 0);
    ws.cnorm.resize(k);
    ws.dsum.assign(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        ws.cnorm[j] = dot(cs + j * d, cs + j * d, d);
    }

    for (std::size_t base = 0; base < n; base += kTile) {
        const std::size_t len = std::min(kTile, n - base);

        // x.c_j for the tile via elementwise passes over the transposed
        // coordinates; contiguous streams, so this is where the vector units
        // live
        for (std::size_t j = 0; j < k; ++j) {
            const double* c = cs + j * d;
            double* acc = ws.prods.data() + j * kTile;
            {
                const double w = c[0];
                const double* col = X.cols + base;
                for (std::size_t i = 0; i < len; ++i) acc[i] = w * col[i];
            }
            for (std::size_t t = 1; t < d; ++t) {
                const double w = c[t];
                const double* col = X.cols + t * n + base;
                for (std::size_t i = 0; i < len; ++i) acc[i] += w * col[i];
            }
        }

        for (std::size_t i = 0; i < len; ++i) {
            std::size_t best = 0;
            double best_score = ws.cnorm[0] - 2.0 * ws.prods[i];
            for (std::size_t j = 1; j < k; ++j) {
                const double score = ws.cnorm[j] - 2.0 * ws.prods[j * kTile + i];
                if (score < best_score) {
                    best_score = score;
                    best = j;
                }
            }
            ws.dsum[best] += std::max(0.0, X.norms[base + i] + best_score);
            ws.cnt[best] += 1;
            double* sum = ws.sums.data() + best * d;
            const double* x = X.rows + (base + i) * d;
            for (std::size_t t = 0; t < d; ++t) sum[t] += x[t];
        }
    }

    double value = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        if (ws.cnt[j] == 0) continue;
        const double inv = 1.0 / static_cast<double>(ws.cnt[j]);
        const double* sum = ws.sums.data() + j * d;
        const double* c = cs + j * d;
        double shift = 0.0;
        for (std::size_t t = 0; t < d; ++t) {
            const double diff = sum[t] * inv - c[t];
            shift += diff * diff;
        }
        value += std::max(0.0, ws.dsum[j] - static_cast<double>(ws.cnt[j]) * shift);
    }
    return value;
}

struct SweepOutcome {
    std::uint64_t best_index = 0;
    double best_value = 0.0;
    std::uint64_t emitted = 0;
    Candidate best;
};

// Generic sweep used by the partition and restart strategies: candidates are
// generated serially (generation order is the candidate index), each chunk is
// valued in parallel, and the argmin merge walks the chunk in index order.
SweepOutcome sweep_generator(const EvalInput& X, CandidateGenerator& generator,
                             std::size_t k) {
    constexpr std::size_t kChunk = 1024;
    std::vector<Candidate> buffer(kChunk);
    std::vector<double> values(kChunk);
    std::vector<EvalScratch> scratch(static_cast<std::size_t>(par::max_threads()) + 1);

    ArgminTracker tracker;
    std::uint64_t emitted = 0;
    for (;;) {
        std::size_t filled = 0;
        while (filled < kChunk && generator.next(buffer[filled])) ++filled;
        if (filled == 0) break;

        const std::int64_t count = static_cast<std::int64_t>(filled);
#pragma omp parallel for schedule(dynamic, 8) if (filled > 16)
        for (std::int64_t i = 0; i < count; ++i) {
            auto& ws = scratch[static_cast<std::size_t>(par::thread_id())];
            values[static_cast<std::size_t>(i)] = candidate_value(
                X, buffer[static_cast<std::size_t>(i)].centers.data(), k, ws);
        }
        for (std::size_t i = 0; i < filled; ++i) {
            tracker.offer(emitted + i, values[i], buffer[i]);
        }
        emitted += filled;
        if (filled < kChunk) break;
    }
    if (emitted == 0) {
        throw DegenerateSampleError("all candidate clusterings degenerate");
    }
    SweepOutcome outcome;
    outcome.best = tracker.winner(outcome.best_index, outcome.best_value);
    outcome.emitted = emitted;
    return outcome;
}

// ---- fused exhaustive center-subset sweep -----------------------------------
//
// The hot tier. Candidates are indexed by the lexicographic rank of their
// k-combination of distinct sample points, the rank space is cut into fixed
// blocks, and each thread generates and evaluates whole blocks locally:
// unrank the block's first combination, walk it forward, look the
// sample-to-site assignment up in a precomputed score table, and value the
// block centroids against X. Degenerate subsets (fewer than k nonempty
// cells) are skipped; a post-pass prefix sum over per-block emit counts
// converts block-local ordinals into the same candidate numbering the
// serial generator produces. Nothing depends on the thread count.

// lexicographic unranking of a k-combination of {0..total_items-1}
void unrank_combination(std::uint64_t rank, std::size_t total_items, std::size_t k,
                        std::vector<std::size_t>& comb) {
    comb.resize(k);
    std::size_t x = 0;
    for (std::size_t pos = 0; pos < k; ++pos) {
        for (;;) {
            const std::uint64_t below = binomial_capped(
                total_items - 1 - x, k - 1 - pos, UINT64_MAX);
            if (below > rank) break;
            rank -= below;
            ++x;
        }
        comb[pos] = x++;
    }
}

bool next_combination(std::vector<std::size_t>& comb, std::size_t total_items) {
    const std::size_t k = comb.size();
    std::size_t j = k;
    while (j-- > 0) {
        if (comb[j] != j + total_items - k) {
            ++comb[j];
            for (std::size_t t = j + 1; t < k; ++t) comb[t] = comb[t - 1] + 1;
            return true;
        }
    }
    return false;
}

struct NearEntry {
    std::uint64_t block;
    std::uint32_t local_ordinal;  // among the block's emitted candidates
    double value;
    Candidate candidate;
};

SweepOutcome sweep_center_subsets(const EvalInput& X, const SampleSet& sample,
                                  std::size_t k) {
    const std::size_t d = X.d;
    const std::size_t m = sample.size();
    const Dataset& S = sample.points;

    // distinct sample rows in first-occurrence order
    std::vector<std::size_t> distinct;
    for (std::size_t i = 0; i < m; ++i) {
        bool seen = false;
        for (std::size_t j : distinct) {
            if (std::equal(S.row(i).begin(), S.row(i).end(), S.row(j).begin())) {
                seen = true;
                break;
            }
        }
        if (!seen) distinct.push_back(i);
    }
    const std::size_t sites = distinct.size();
    if (sites < k) {
        throw DegenerateSampleError("sample has " + std::to_string(sites) +
                                    " distinct points, need at least k = " +
                                    std::to_string(k));
    }
    const std::uint64_t total = binomial_capped(sites, k, UINT64_MAX);

    // score[c * m + i] ranks site c for sample member i; the argmin over
    // sites matches the squared distance argmin. Site-major layout: the
    // lexicographic combination walk keeps the leading sites' rows hot.
    std::vector<double> score(sites * m);
    for (std::size_t c = 0; c < sites; ++c) {
        const double* site = S.data() + distinct[c] * d;
        const double site_norm = dot(site, site, d);
        for (std::size_t i = 0; i < m; ++i) {
            score[c * m + i] = site_norm - 2.0 * dot(S.data() + i * d, site, d);
        }
    }

    constexpr std::uint64_t kBlock = 2048;
    const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
    std::vector<std::uint32_t> emitted_per_block(blocks, 0);
    const int max_threads = par::max_threads();
    std::vector<std::vector<NearEntry>> near_entries(
        static_cast<std::size_t>(max_threads) + 1);
    std::vector<double> best_per_thread(static_cast<std::size_t>(max_threads) + 1,
                                        std::numeric_limits<double>::infinity());

#pragma omp parallel
    {
        const auto tid = static_cast<std::size_t>(par::thread_id());
        EvalScratch ws;
        std::vector<std::size_t> comb;
        std::vector<const double*> site_rows(k);
        std::vector<std::int32_t> labels(m);
        std::vector<std::int64_t> counts(k);
        std::vector<double> centers(k * d);
        double local_best = std::numeric_limits<double>::infinity();
        auto& local_near = near_entries[tid];

#pragma omp for schedule(dynamic, 1)
        for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
            const std::uint64_t first = static_cast<std::uint64_t>(b) * kBlock;
            const std::uint64_t last = std::min(total, first + kBlock);
            unrank_combination(first, sites, k, comb);
            std::uint32_t block_emitted = 0;
            for (std::uint64_t rank = first; rank < last;
                 ++rank, next_combination(comb, sites)) {
                // nearest chosen site per sample member, ties to the lowest
                // position (equals the lowest distinct index)
                std::fill(counts.begin(), counts.end(), 0);
                for (std::size_t j = 0; j < k; ++j) {
                    site_rows[j] = score.data() + comb[j] * m;
                }
                for (std::size_t i = 0; i < m; ++i) {
                    std::size_t best = 0;
                    double best_score = site_rows[0][i];
                    for (std::size_t j = 1; j < k; ++j) {
                        const double s = site_rows[j][i];
                        if (s < best_score) {
                            best_score = s;
                            best = j;
                        }
                    }
                    labels[i] = static_cast<std::int32_t>(best);
                    counts[best] += 1;
                }
                bool full = true;
                for (std::size_t j = 0; j < k; ++j) full = full && counts[j] > 0;
                if (!full) continue;  // degenerate subset, not emitted

                std::fill(centers.begin(), centers.end(), 0.0);
                for (std::size_t i = 0; i < m; ++i) {
                    double* sum = centers.data() +
                                  static_cast<std::size_t>(labels[i]) * d;
                    const double* x = S.data() + i * d;
                    for (std::size_t t = 0; t < d; ++t) sum[t] += x[t];
                }
                for (std::size_t j = 0; j < k; ++j) {
                    const double inv = 1.0 / static_cast<double>(counts[j]);
                    for (std::size_t t = 0; t < d; ++t) centers[j * d + t] *= inv;
                }

                const double value = candidate_value(X, centers.data(), k, ws);
                const std::uint32_t ordinal = block_emitted++;
                if (value < local_best) local_best = value;
                if (within_tol(value, local_best)) {
                    NearEntry entry;
                    entry.block = static_cast<std::uint64_t>(b);
                    entry.local_ordinal = ordinal;
                    entry.value = value;
                    entry.candidate.labels = labels;
                    CentroidSet cs(k, d);
                    std::copy(centers.begin(), centers.end(), cs.data());
                    entry.candidate.centers = std::move(cs);
                    local_near.push_back(std::move(entry));
                    if (local_near.size() > 256) {
                        std::erase_if(local_near, [&](const NearEntry& e) {
                            return !within_tol(e.value, local_best);
                        });
                    }
                }
            }
            emitted_per_block[static_cast<std::size_t>(b)] = block_emitted;
        }
        best_per_thread[tid] = std::min(best_per_thread[tid], local_best);
    }

    std::vector<std::uint64_t> block_prefix(blocks + 1, 0);
    for (std::uint64_t b = 0; b < blocks; ++b) {
        block_prefix[b + 1] = block_prefix[b] + emitted_per_block[b];
    }
    const std::uint64_t emitted = block_prefix[blocks];
    if (emitted == 0) {
        throw DegenerateSampleError("all candidate clusterings degenerate");
    }

    double best_value = std::numeric_limits<double>::infinity();
    for (double v : best_per_thread) best_value = std::min(best_value, v);

    SweepOutcome outcome;
    outcome.emitted = emitted;
    outcome.best_value = best_value;
    const NearEntry* winner = nullptr;
    std::uint64_t winner_index = 0;
    for (const auto& bucket : near_entries) {
        for (const NearEntry& e : bucket) {
            if (!within_tol(e.value, best_value)) continue;
            const std::uint64_t index = block_prefix[e.block] + e.local_ordinal;
            if (winner == nullptr || index < winner_index) {
                winner = &e;
                winner_index = index;
            }
        }
    }
    outcome.best_index = winner_index;
    outcome.best = winner->candidate;
    return outcome;
}

}  // namespace

}  // namespace detail

Clustering evaluate_candidate(const Dataset& X, const Candidate& candidate) {
    if (candidate.centers.k() == 0) {
        throw EmptyClusterError("candidate with no nonempty block");
    }
    return voronoi_assign(X, candidate.centers);
}

RsResult run_rs_with_sample(const Dataset& X, SampleSet sample, const RsConfig& cfg) {
    const std::size_t n = X.size();
    const std::size_t d = X.dim();
    if (cfg.k < 1) throw InvalidParameterError("k must be >= 1");
    if (n < static_cast<std::size_t>(cfg.k)) {
        throw InvalidParameterError("need n >= k points");
    }
    if (sample.size() < static_cast<std::size_t>(cfg.k)) {
        throw InvalidParameterError("sample size m must be >= k");
    }
    if (sample.points.dim() != d) throw DimensionError("sample dimension mismatch");

    std::vector<double> xnorm(n);
    std::vector<double> xcols(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        xnorm[i] = detail::dot(X.data() + i * d, X.data() + i * d, d);
        for (std::size_t t = 0; t < d; ++t) xcols[t * n + i] = X.data()[i * d + t];
    }
    const detail::EvalInput eval{X.data(), xcols.data(), xnorm.data(), n, d};

    const std::size_t k = static_cast<std::size_t>(cfg.k);
    // the fused sweep indexes candidates by combination rank; past 2^64
    // combinations the rank arithmetic saturates, so fall back to the
    // streaming generator (correct at any size, just slower)
    const bool rank_fits =
        binomial_capped(count_distinct_rows(sample.points),
                        static_cast<std::uint64_t>(cfg.k), UINT64_MAX) != UINT64_MAX;
    detail::SweepOutcome outcome;
    if (cfg.strategy.mode == CandidateStrategy::Mode::ExhaustiveCenterSubsets &&
        rank_fits) {
        outcome = detail::sweep_center_subsets(eval, sample, k);
    } else {
        auto generator = make_candidate_generator(sample, cfg.k, cfg.strategy,
                                                  RngStream(cfg.seed).derive(1));
        outcome = detail::sweep_generator(eval, *generator, k);
    }

    std::vector<std::int32_t> labels(n);
    detail::assign_nearest(X.data(), n, d, outcome.best.centers.data(), k, labels.data());
    Clustering clustering =
        clustering_from_assignment(X, std::move(labels), cfg.k, &outcome.best.centers);

    return RsResult{std::move(clustering), outcome.best_index, outcome.emitted,
                    std::move(sample), outcome.best.centers};
}

RsResult run_rs(const Dataset& X, const RsConfig& cfg) {
    if (cfg.m < static_cast<std::size_t>(cfg.k) || cfg.m == 0) {
        throw InvalidParameterError("sample size m must be >= k");
    }
    if (cfg.m > cfg.sample_cap) {
        throw InvalidParameterError("sample size m exceeds the configured cap");
    }
    RngStream sampler = RngStream(cfg.seed).derive(0);
    SampleSet sample = sample_with_replacement(X, cfg.m, sampler);
    return run_rs_with_sample(X, std::move(sample), cfg);
}

}  // namespace rsclust
