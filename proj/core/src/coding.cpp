#include "infokit/coding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "bigmath.hpp"
#include "infokit/entropy.hpp"
#include "infokit/errors.hpp"
#include "infokit/parallel.hpp"
#include "infokit/stats.hpp"
#include "topmass.hpp"

namespace infokit {

namespace {

constexpr std::uint64_t kBinaryClassCap = 1000000;   // binary alphabets: n cap
constexpr std::uint64_t kCompositionCap = 1u << 21;  // general alphabets
constexpr std::uint64_t kPayloadBitsCap = 1u << 26;  // index width sanity cap
// Memory guard for the per-class size/offset tables (bytes, rough estimate).
constexpr std::uint64_t kClassTableBytesCap = 1u << 30;

bool within(double statistic, double reference, double epsilon) {
  return std::fabs(statistic - reference) <= epsilon;
}

// Payload bits required to address `count` distinct indices.
std::uint64_t bits_needed(const detail::BigInt& count) {
  if (count <= 1) return 0;
  const std::uint64_t top = boost::multiprecision::msb(count);   // floor(log2)
  const bool pow2 = (count & (count - 1)) == 0;
  return pow2 ? top : top + 1;
}

[[noreturn]] void throw_rate_infeasible(const CodeParams& params, const detail::BigInt& typ_count) {
  const std::uint64_t need = bits_needed(typ_count);
  const double min_rate = static_cast<double>(need) / static_cast<double>(params.n);
  std::ostringstream os;
  os << "rate " << params.rate.num << "/" << params.rate.den << " infeasible at n=" << params.n
     << ": the epsilon-typical set (epsilon=" << params.epsilon << ") needs " << need
     << " payload bits but ceil(n*R)=" << params.payload_bits()
     << "; minimum feasible rate is " << need << "/" << params.n << " = " << min_rate;
  throw rate_infeasible_error(os.str(), min_rate);
}

// Lexicographic rank of s within its type class (letter order 0 < 1 < ...).
// m is the class size; every division below is exact: m * counts[b] /
// remaining counts the arrangements of the remaining letters that start
// with b.
detail::BigInt rank_in_class(const Sequence& s, std::vector<std::uint64_t> counts,
                             detail::BigInt m) {
  detail::BigInt rank = 0;
  std::uint64_t remaining = s.size();
  for (std::uint32_t a : s.letters) {
    for (std::uint32_t b = 0; b < a; ++b) {
      if (counts[b] > 0) rank += m * counts[b] / remaining;
    }
    m = m * counts[a] / remaining;
    --counts[a];
    --remaining;
  }
  return rank;
}

// Inverse of rank_in_class: walks positions left to right, picking at each
// step the smallest letter whose block of arrangements contains r.
Sequence unrank_in_class(detail::BigInt r, std::vector<std::uint64_t> counts,
                         detail::BigInt m, std::uint64_t n) {
  Sequence s;
  s.letters.reserve(n);
  std::uint64_t remaining = n;
  const std::uint32_t w = static_cast<std::uint32_t>(counts.size());
  for (std::uint64_t i = 0; i < n; ++i) {
    for (std::uint32_t a = 0; a < w; ++a) {
      if (counts[a] == 0) continue;
      detail::BigInt cnt = m * counts[a] / remaining;
      if (r < cnt) {
        s.letters.push_back(a);
        m = std::move(cnt);
        --counts[a];
        break;
      }
      r -= cnt;
    }
    --remaining;
  }
  return s;
}

std::vector<std::uint64_t> checked_histogram(const Sequence& s, std::uint64_t n,
                                             std::uint32_t w) {
  if (s.size() != n) {
    throw std::invalid_argument("codebook: sequence length must equal the block length n");
  }
  std::vector<std::uint64_t> counts(w, 0);
  for (std::uint32_t letter : s.letters) {
    if (letter >= w) throw std::invalid_argument("codebook: letter outside the alphabet");
    ++counts[letter];
  }
  return counts;
}

}  // namespace

Codebook Codebook::build(const Distribution& d, const CodeParams& params) {
  if (params.n == 0) throw std::invalid_argument("codebook: n must be >= 1");
  if (params.rate.num == 0) throw std::invalid_argument("codebook: rate must be > 0");
  if (params.epsilon < 0.0 || !std::isfinite(params.epsilon)) {
    throw std::invalid_argument("codebook: epsilon must be finite and >= 0");
  }
  const std::uint64_t n = params.n;
  const std::uint64_t payload = params.payload_bits();
  if (payload > kPayloadBitsCap) {
    throw capacity_error("codebook: payload width exceeds the 2^26-bit index guard");
  }
  const detail::BigInt budget = detail::BigInt(1) << payload;

  Codebook cb;
  cb.params_ = params;
  cb.w_ = d.alphabet_size();
  cb.binary_ = (cb.w_ == 2);

  std::vector<double> weights(cb.w_);
  for (std::uint32_t i = 0; i < cb.w_; ++i) weights[i] = d.surprisal_bits(i);
  const double href = shannon_entropy(d, Units::Bits).value;

  if (cb.binary_) {
    if (n > kBinaryClassCap) {
      throw capacity_error("codebook: binary path requires n <= 10^6");
    }
    // Classes are ones-counts k; the statistic is linear in k, so the typical
    // classes form one contiguous interval.
    std::vector<std::uint64_t> counts(2);
    std::uint64_t t_lo = 1, t_hi = 0;
    for (std::uint64_t k = 0; k <= n; ++k) {
      counts[0] = n - k;
      counts[1] = k;
      if (within(detail::class_statistic(weights, counts, n), href, params.epsilon)) {
        if (t_lo > t_hi) t_lo = k;
        t_hi = k;
      }
    }

    detail::BigInt typ_count = 0;
    if (t_lo <= t_hi) {
      detail::BigInt c = detail::binomial(n, t_lo);
      for (std::uint64_t k = t_lo;; ++k) {
        typ_count += c;
        if (k == t_hi) break;
        c *= n - k;
        c /= k + 1;
      }
    }
    if (typ_count > budget) throw_rate_infeasible(params, typ_count);
    cb.typical_count_ = typ_count;

    if (t_lo > t_hi) {
      // Empty typical set: the coded set stays empty (every encode fails).
      cb.coded_lo_ = cb.typical_lo_ = 1;
      cb.coded_hi_ = cb.typical_hi_ = 0;
      return cb;
    }

    // Grow toward the lower-statistic (higher per-sequence probability) side
    // first, then the other side, whole classes only, while the budget holds.
    std::uint64_t lo = t_lo, hi = t_hi;
    detail::BigInt remaining = budget - typ_count;
    detail::BigInt c_lo = detail::binomial(n, lo);
    detail::BigInt c_hi = detail::binomial(n, hi);
    const auto grow_down = [&] {   // toward k = 0
      while (lo > 0) {
        detail::BigInt c = c_lo * lo / (n - lo + 1);   // C(n, lo-1)
        if (c > remaining) break;
        remaining -= c;
        c_lo = std::move(c);
        --lo;
      }
    };
    const auto grow_up = [&] {     // toward k = n
      while (hi < n) {
        detail::BigInt c = c_hi * (n - hi) / (hi + 1);  // C(n, hi+1)
        if (c > remaining) break;
        remaining -= c;
        c_hi = std::move(c);
        ++hi;
      }
    };
    // The statistic moves with k at slope (w1 - w0)/n: when w1 < w0 the
    // lower-statistic side lies at larger k.  Equal weights mean every class
    // was already typical and both calls are no-ops.
    if (weights[1] < weights[0]) {
      grow_up();
      grow_down();
    } else {
      grow_down();
      grow_up();
    }

    const std::uint64_t width = hi - lo + 1;
    if (2 * width * (n / 8 + 48) > kClassTableBytesCap) {
      throw capacity_error("codebook: coded class table would exceed the memory guard");
    }

    cb.coded_lo_ = lo;
    cb.coded_hi_ = hi;
    cb.typical_lo_ = t_lo;
    cb.typical_hi_ = t_hi;
    cb.bin_sizes_.reserve(width);
    cb.bin_offsets_.reserve(width);
    detail::BigInt off = 0;
    detail::BigInt c = std::move(c_lo);
    for (std::uint64_t k = lo;; ++k) {
      cb.bin_offsets_.push_back(off);
      cb.bin_sizes_.push_back(c);
      off += c;
      if (k == hi) break;
      c *= n - k;
      c /= k + 1;
    }
    cb.coded_count_ = std::move(off);
    return cb;
  }

  // General alphabet: materialize every composition.  Feasible whenever the
  // composition count is modest, which covers (and exceeds) the small
  // exhaustive regime W^n <= 2^20 since distinct classes never outnumber
  // sequences.
  if (!detail::compositions_fit(n, cb.w_, kCompositionCap)) {
    throw capacity_error("codebook: class enumeration exceeds the feasibility guard");
  }
  struct Raw {
    std::vector<std::uint64_t> counts;
    double stat;
    detail::BigInt size;
  };
  std::vector<Raw> raws;
  detail::for_each_composition(n, cb.w_, [&](const std::vector<std::uint64_t>& counts) {
    raws.push_back({counts, detail::class_statistic(weights, counts, n),
                    detail::multinomial(n, counts)});
  });
  // Stat-ascending view; ties keep the enumeration (lex-descending) order.
  std::vector<std::size_t> order(raws.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return raws[a].stat < raws[b].stat; });

  const std::size_t npos = order.size();
  std::size_t beg = npos, end = npos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (within(raws[order[i]].stat, href, params.epsilon)) {
      if (beg == npos) beg = i;
      end = i;
    }
  }

  detail::BigInt typ_count = 0;
  if (beg != npos) {
    for (std::size_t i = beg; i <= end; ++i) typ_count += raws[order[i]].size;
  }
  if (typ_count > budget) throw_rate_infeasible(params, typ_count);
  cb.typical_count_ = typ_count;

  if (beg == npos) {
    cb.coded_lo_ = cb.typical_lo_ = 1;
    cb.coded_hi_ = cb.typical_hi_ = 0;
    return cb;
  }

  std::size_t lo = beg, hi = end;
  detail::BigInt remaining = budget - typ_count;
  while (lo > 0 && raws[order[lo - 1]].size <= remaining) {
    remaining -= raws[order[lo - 1]].size;
    --lo;
  }
  while (hi + 1 < order.size() && raws[order[hi + 1]].size <= remaining) {
    remaining -= raws[order[hi + 1]].size;
    ++hi;
  }

  // Indices are assigned in composition-lex-descending order (the enumeration
  // order), independent of where a class sits in the statistic ordering.
  std::vector<std::size_t> selected(order.begin() + lo, order.begin() + hi + 1);
  std::sort(selected.begin(), selected.end());
  cb.classes_.reserve(selected.size());
  detail::BigInt off = 0;
  for (std::size_t ri : selected) {
    ClassEntry e;
    e.counts = std::move(raws[ri].counts);
    e.size = std::move(raws[ri].size);
    e.offset = off;
    off += e.size;
    cb.class_index_[e.counts] = cb.classes_.size();
    cb.classes_.push_back(std::move(e));
  }
  cb.coded_count_ = std::move(off);
  cb.coded_lo_ = lo;       // positions in the statistic-sorted class order
  cb.coded_hi_ = hi;
  cb.typical_lo_ = beg;
  cb.typical_hi_ = end;
  return cb;
}

const Codebook::ClassEntry* Codebook::find_class(const std::vector<std::uint64_t>& counts) const {
  const auto it = class_index_.find(counts);
  return it == class_index_.end() ? nullptr : &classes_[it->second];
}

bool Codebook::covers(const Sequence& s) const {
  const auto counts = checked_histogram(s, params_.n, w_);
  if (binary_) {
    return coded_lo_ <= coded_hi_ && counts[1] >= coded_lo_ && counts[1] <= coded_hi_;
  }
  return find_class(counts) != nullptr;
}

Codeword Codebook::encode(const Sequence& s) const {
  const auto counts = checked_histogram(s, params_.n, w_);
  Codeword cw;
  if (binary_) {
    const std::uint64_t k = counts[1];
    if (coded_lo_ > coded_hi_ || k < coded_lo_ || k > coded_hi_) return cw;
    const std::size_t bi = static_cast<std::size_t>(k - coded_lo_);
    cw.ok = true;
    cw.index = bin_offsets_[bi] + rank_in_class(s, counts, bin_sizes_[bi]);
    return cw;
  }
  const ClassEntry* e = find_class(counts);
  if (e == nullptr) return cw;
  cw.ok = true;
  cw.index = e->offset + rank_in_class(s, counts, e->size);
  return cw;
}

std::optional<Sequence> Codebook::decode(const Codeword& w) const {
  if (!w.ok) return std::nullopt;
  if (w.index < 0 || w.index >= coded_count_) {
    throw std::invalid_argument("decode: malformed codeword (index outside the coded range)");
  }
  const std::uint64_t n = params_.n;
  if (binary_) {
    const auto it = std::upper_bound(bin_offsets_.begin(), bin_offsets_.end(), w.index);
    const std::size_t bi = static_cast<std::size_t>(it - bin_offsets_.begin()) - 1;
    const std::uint64_t k = coded_lo_ + bi;
    std::vector<std::uint64_t> counts{n - k, k};
    return unrank_in_class(w.index - bin_offsets_[bi], std::move(counts), bin_sizes_[bi], n);
  }
  const auto it = std::upper_bound(
      classes_.begin(), classes_.end(), w.index,
      [](const BigInt& v, const ClassEntry& e) { return v < e.offset; });
  const ClassEntry& e = *(it - 1);
  return unrank_in_class(w.index - e.offset, e.counts, e.size, n);
}

ReliabilityReport reliability_estimate(const Distribution& d, const CodeParams& params,
                                       std::uint64_t trials, std::uint64_t seed,
                                       unsigned threads) {
  if (trials == 0) throw std::invalid_argument("reliability: trials must be >= 1");
  const Codebook cb = Codebook::build(d, params);

  struct Block {
    std::uint64_t ok = 0;
  };
  const auto blocks = run_trial_blocks<Block>(
      trials, threads, [&](std::uint64_t begin, std::uint64_t end) {
        Block blk;
        Sequence s;
        s.letters.resize(params.n);
        for (std::uint64_t trial = begin; trial < end; ++trial) {
          TrialRng rng(seed, trial);
          for (std::uint32_t i = 0; i < params.n; ++i) s.letters[i] = d.sample(rng);
          const Codeword cw = cb.encode(s);
          if (!cw.ok) continue;
          const auto back = cb.decode(cw);
          if (back.has_value() && *back == s) ++blk.ok;
        }
        return blk;
      });

  std::uint64_t successes = 0;
  for (const auto& b : blocks) successes += b.ok;

  ReliabilityReport r;
  r.stats.successes = successes;
  r.stats.failures = trials - successes;
  r.stats.empirical_reliability = static_cast<double>(successes) / static_cast<double>(trials);
  r.estimate.estimate = r.stats.empirical_reliability;
  r.estimate.trials = trials;
  r.estimate.seed = seed;
  const auto ci = wilson_interval(successes, trials);
  r.estimate.ci_low = ci.low;
  r.estimate.ci_high = ci.high;
  return r;
}

std::vector<RateSweepRow> rate_sweep(const Distribution& d, std::uint32_t n,
                                     const std::vector<Rational>& rates,
                                     std::uint64_t trials, std::uint64_t seed,
                                     double converse_epsilon, unsigned threads) {
  if (rates.empty()) throw std::invalid_argument("rate sweep: at least one rate required");
  for (std::size_t i = 1; i < rates.size(); ++i) {
    const auto lhs = static_cast<std::uint64_t>(rates[i - 1].num) * rates[i].den;
    const auto rhs = static_cast<std::uint64_t>(rates[i].num) * rates[i - 1].den;
    if (lhs > rhs) throw std::invalid_argument("rate sweep: rates must be sorted ascending");
  }
  if (!(converse_epsilon > 0.0) || !std::isfinite(converse_epsilon)) {
    throw std::invalid_argument("rate sweep: converse epsilon must be finite and > 0");
  }

  const double href = shannon_entropy(d, Units::Bits).value;
  std::vector<RateSweepRow> rows;
  rows.reserve(rates.size());
  for (const Rational& rate : rates) {
    RateSweepRow row;
    row.rate = rate;
    const double rd = rate.to_double();
    row.epsilon_used = rd > href ? (rd - href) / 2.0 : converse_epsilon;
    const CodeParams params{n, rate, row.epsilon_used};
    row.payload_bits = params.payload_bits();
    row.best_possible_mass = top_set_mass_exact_budget(d, n, rate);
    try {
      const ReliabilityReport rel = reliability_estimate(d, params, trials, seed, threads);
      row.feasible = true;
      row.reliability = rel.stats.empirical_reliability;
      row.ci_low = rel.estimate.ci_low;
      row.ci_high = rel.estimate.ci_high;
    } catch (const rate_infeasible_error& e) {
      row.feasible = false;
      row.min_feasible_rate = e.min_rate();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

double top_set_mass_exact_budget(const Distribution& d, std::uint64_t n, Rational rate) {
  if (rate.num == 0) throw std::invalid_argument("top-set mass: rate must be > 0");
  const std::uint64_t bits = ceil_mul(n, rate);
  if (bits > kPayloadBitsCap) {
    throw capacity_error("top-set mass: budget exceeds the 2^26-bit guard");
  }
  return detail::top_mass_with_budget(d, n, detail::BigInt(1) << bits);
}

}  // namespace infokit
