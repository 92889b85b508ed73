#include "core/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "core/edit_path.hpp"
#include "core/error.hpp"

namespace gedot {
namespace {

void require_nonempty(const std::vector<PairRecord>& records) {
  if (records.empty()) fail(ErrorKind::InvalidArgument, "metric over an empty batch");
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

// Number of tied pairs summed over runs of equal values in a sorted range.
template <typename It, typename Eq>
long long tied_pairs(It first, It last, Eq eq) {
  long long total = 0;
  while (first != last) {
    It run = first;
    long long len = 0;
    while (run != last && eq(*run, *first)) {
      ++run;
      ++len;
    }
    total += len * (len - 1) / 2;
    first = run;
  }
  return total;
}

// Sorts by y with merge sort, returning the number of inversions.
long long merge_count(std::vector<double>& y, std::vector<double>& buf, std::size_t lo,
                      std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  long long swaps = merge_count(y, buf, lo, mid) + merge_count(y, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (y[j] < y[i]) {
      swaps += static_cast<long long>(mid - i);
      buf[k++] = y[j++];
    } else {
      buf[k++] = y[i++];
    }
  }
  while (i < mid) buf[k++] = y[i++];
  while (j < hi) buf[k++] = y[j++];
  std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo), buf.begin() + static_cast<std::ptrdiff_t>(hi),
            y.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

struct Overlap {
  double recall, precision, f1;
};

Overlap overlap(const std::vector<std::string>& pred, const std::vector<std::string>& truth) {
  std::map<std::string, long long> counts;
  for (const auto& op : truth) ++counts[op];
  long long common = 0;
  for (const auto& op : pred) {
    auto it = counts.find(op);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++common;
    }
  }
  Overlap o;
  o.recall = truth.empty() ? 1.0 : static_cast<double>(common) / static_cast<double>(truth.size());
  o.precision = pred.empty() ? 1.0 : static_cast<double>(common) / static_cast<double>(pred.size());
  o.f1 = o.recall + o.precision > 0.0 ? 2.0 * o.recall * o.precision / (o.recall + o.precision) : 0.0;
  return o;
}

}  // namespace

double mae(const std::vector<PairRecord>& records) {
  require_nonempty(records);
  double s = 0.0;
  for (const auto& r : records) s += std::abs(static_cast<double>(r.truth) - r.prediction);
  return s / static_cast<double>(records.size());
}

double accuracy(const std::vector<PairRecord>& records) {
  require_nonempty(records);
  std::size_t hits = 0;
  for (const auto& r : records) {
    if (std::floor(r.prediction + 0.5) == static_cast<double>(r.truth)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

double feasibility(const std::vector<PairRecord>& records) {
  require_nonempty(records);
  std::size_t ok = 0;
  for (const auto& r : records) {
    if (r.prediction >= static_cast<double>(r.truth) - 1e-9) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(records.size());
}

double spearman_rho(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorKind::InvalidArgument, "rank inputs differ in length");
  const std::vector<double> rx = average_ranks(x);
  const std::vector<double> ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

double kendall_tau_b(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) fail(ErrorKind::InvalidArgument, "rank inputs differ in length");
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });
  const long long ties_x = tied_pairs(order.begin(), order.end(),
                                      [&](std::size_t a, std::size_t b) { return x[a] == x[b]; });
  const long long ties_xy = tied_pairs(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] == x[b] && y[a] == y[b];
  });
  std::vector<double> ys(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  const long long swaps = merge_count(ys, buf, 0, n);
  const long long ties_y =
      tied_pairs(ys.begin(), ys.end(), [](double a, double b) { return a == b; });
  const long long total = static_cast<long long>(n) * (static_cast<long long>(n) - 1) / 2;
  const double denom = std::sqrt(static_cast<double>(total - ties_x) * static_cast<double>(total - ties_y));
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  const long long concordant_minus_discordant = total - ties_x - ties_y + ties_xy - 2 * swaps;
  return static_cast<double>(concordant_minus_discordant) / denom;
}

double precision_at_k(const std::vector<double>& pred, const std::vector<double>& truth,
                      std::size_t k) {
  if (pred.size() != truth.size()) fail(ErrorKind::InvalidArgument, "p@k inputs differ in length");
  if (k == 0 || k > pred.size()) fail(ErrorKind::InvalidArgument, "p@k needs 0 < k <= group size");
  std::vector<std::size_t> by_truth(truth.size());
  std::iota(by_truth.begin(), by_truth.end(), 0);
  std::stable_sort(by_truth.begin(), by_truth.end(),
                   [&](std::size_t a, std::size_t b) { return truth[a] < truth[b]; });
  const double cutoff = truth[by_truth[k - 1]];
  std::vector<std::size_t> by_pred(pred.size());
  std::iota(by_pred.begin(), by_pred.end(), 0);
  std::stable_sort(by_pred.begin(), by_pred.end(),
                   [&](std::size_t a, std::size_t b) { return pred[a] < pred[b]; });
  std::size_t hits = 0;
  for (std::size_t t = 0; t < k; ++t) {
    if (truth[by_pred[t]] <= cutoff) ++hits;
  }
  return std::min(1.0, static_cast<double>(hits) / static_cast<double>(k));
}

RankMetrics rank_metrics(const std::vector<PairRecord>& records) {
  std::map<std::string, std::vector<const PairRecord*>> groups;
  for (const auto& r : records) groups[r.query_id].push_back(&r);

  RankMetrics out;
  out.groups = groups.size();
  double rho_sum = 0.0, tau_sum = 0.0, p10_sum = 0.0, p20_sum = 0.0;
  std::size_t rank_groups = 0, p10_groups = 0, p20_groups = 0;
  for (auto& [id, members] : groups) {
    std::sort(members.begin(), members.end(),
              [](const PairRecord* a, const PairRecord* b) { return a->pair_index < b->pair_index; });
    std::vector<double> pred, truth;
    for (const PairRecord* r : members) {
      pred.push_back(r->prediction);
      truth.push_back(static_cast<double>(r->truth));
    }
    const double rho = spearman_rho(pred, truth);
    const double tau = kendall_tau_b(pred, truth);
    if (std::isnan(rho) || std::isnan(tau)) {
      ++out.skipped_rank_groups;
    } else {
      rho_sum += rho;
      tau_sum += tau;
      ++rank_groups;
    }
    if (members.size() >= 10) {
      p10_sum += precision_at_k(pred, truth, 10);
      ++p10_groups;
    } else {
      ++out.skipped_p10_groups;
    }
    if (members.size() >= 20) {
      p20_sum += precision_at_k(pred, truth, 20);
      ++p20_groups;
    } else {
      ++out.skipped_p20_groups;
    }
  }
  if (rank_groups) {
    out.spearman_rho = rho_sum / static_cast<double>(rank_groups);
    out.kendall_tau = tau_sum / static_cast<double>(rank_groups);
  }
  if (p10_groups) out.p_at_10 = p10_sum / static_cast<double>(p10_groups);
  if (p20_groups) out.p_at_20 = p20_sum / static_cast<double>(p20_groups);
  return out;
}

PathMetrics path_metrics(const std::vector<PairRecord>& records) {
  PathMetrics out;
  double r_sum = 0.0, p_sum = 0.0, f_sum = 0.0;
  for (const auto& rec : records) {
    if (!rec.predicted_ops || rec.truth_ops.empty()) continue;
    std::optional<Overlap> best;
    for (const auto& truth : rec.truth_ops) {
      const Overlap o = overlap(*rec.predicted_ops, truth);
      if (!best || o.f1 > best->f1) best = o;
    }
    r_sum += best->recall;
    p_sum += best->precision;
    f_sum += best->f1;
    ++out.pairs;
  }
  if (out.pairs) {
    const double n = static_cast<double>(out.pairs);
    out.recall = r_sum / n;
    out.precision = p_sum / n;
    out.f1 = f_sum / n;
  }
  return out;
}

EvalReport evaluate(const std::vector<PairRecord>& records) {
  EvalReport rep;
  rep.pairs = records.size();
  rep.mae = mae(records);
  rep.accuracy = accuracy(records);
  rep.feasibility = feasibility(records);
  rep.rank = rank_metrics(records);
  rep.path = path_metrics(records);
  double ms = 0.0;
  std::size_t timed = 0;
  for (const auto& r : records) {
    if (r.elapsed_millis) {
      ms += *r.elapsed_millis;
      ++timed;
    }
  }
  if (timed) rep.seconds_per_100_pairs = ms / static_cast<double>(timed) * 100.0 / 1000.0;
  return rep;
}

std::vector<std::string> canonical_op_keys(const GraphPair& pair, const NodeMatching& m) {
  const EditPath path = ep_gen(pair, m);
  const std::size_t n1 = pair.g1.node_count();
  auto node = [&](NodeIndex x) {
    return x < n1 ? "v" + std::to_string(m[x]) : "n" + std::to_string(x - n1);
  };
  auto edge = [&](const char* kind, NodeIndex a, NodeIndex b) {
    std::string x = node(a), y = node(b);
    if (y < x) std::swap(x, y);
    return std::string(kind) + ":" + x + "-" + y;
  };
  std::vector<std::string> keys;
  keys.reserve(path.length());
  for (const EditOperation& op : path.ops) {
    switch (op.kind) {
      case EditKind::RelabelNode:
        keys.push_back("relabel:" + node(op.node) + ":" + op.label);
        break;
      case EditKind::InsertNode:
        keys.push_back("insert_node:" + op.label);
        break;
      case EditKind::DeleteEdge:
        keys.push_back(edge("delete_edge", op.u, op.v));
        break;
      case EditKind::InsertEdge:
        keys.push_back(edge("insert_edge", op.u, op.v));
        break;
      case EditKind::DeleteNode:
        keys.push_back("delete_node:" + node(op.node));
        break;
    }
  }
  return keys;
}

}  // namespace gedot
