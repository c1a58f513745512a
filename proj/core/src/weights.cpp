#include "hgs/weights.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hgs {

bool Weight::half_integer() const {
  for (long v : twice)
    if (v % 2 != 0) return true;
  return false;
}

bool Weight::is_zero() const {
  for (long v : twice)
    if (v != 0) return false;
  return true;
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < twice.size(); ++i) {
    if (i) os << ',';
    if (twice[i] % 2 == 0)
      os << twice[i] / 2;
    else
      os << twice[i] << "/2";
  }
  os << ')';
  return os.str();
}

Weight weight_from_ints(const std::vector<long>& entries) {
  Weight w;
  for (long v : entries) w.twice.push_back(2 * v);
  return w;
}

int so_rank(int k) { return k / 2; }

namespace {

long parity_of(long v) { return ((v % 2) + 2) % 2; }

bool same_parity(const std::vector<long>& a) {
  for (std::size_t i = 1; i < a.size(); ++i)
    if (parity_of(a[i]) != parity_of(a[0])) return false;
  return true;
}

bool parity_compatible(const std::vector<long>& a,
                       const std::vector<long>& b) {
  if (a.empty() || b.empty()) return true;
  return parity_of(a[0]) == parity_of(b[0]);
}

}  // namespace

bool valid_weight(int k, const Weight& w) {
  const int r = so_rank(k);
  if (static_cast<int>(w.twice.size()) != r) return false;
  if (r == 0) return w.twice.empty();
  if (!same_parity(w.twice)) return false;
  if (k % 2 == 0) {
    long prev = std::labs(w.twice[0]);
    for (int i = 1; i < r; ++i) {
      if (w.twice[i] < prev) return false;
      prev = w.twice[i];
    }
    return true;
  }
  long prev = 0;
  for (int i = 0; i < r; ++i) {
    if (w.twice[i] < prev) return false;
    prev = w.twice[i];
  }
  return true;
}

SeriesLabel SeriesLabel::principal(int N, Weight xi) {
  SeriesLabel l;
  l.kind = Kind::principal;
  l.N = N;
  if (!valid_weight(N - 1, xi))
    throw std::invalid_argument("SeriesLabel: xi not a valid SO(N-1) weight");
  l.xi = std::move(xi);
  return l;
}

SeriesLabel SeriesLabel::discrete(int N, long s, Weight xi) {
  if (N % 2 != 0)
    throw std::invalid_argument("SeriesLabel: discrete series need N even");
  if (s == 0) throw std::invalid_argument("SeriesLabel: s must be nonzero");
  SeriesLabel l;
  l.kind = Kind::discrete;
  l.N = N;
  l.twice_s = 2 * s;
  if (!valid_weight(N - 1, xi))
    throw std::invalid_argument("SeriesLabel: xi not a valid SO(N-1) weight");
  long prev = 2 * std::labs(s);
  for (long v : xi.twice) {
    if (v < prev || v <= 0)
      throw std::invalid_argument("SeriesLabel: discrete xi out of range");
    prev = v;
  }
  l.xi = std::move(xi);
  return l;
}

std::string SeriesLabel::str() const {
  std::ostringstream os;
  if (kind == Kind::principal)
    os << "principal(omega, xi=" << xi.str() << ", N=" << N << ")";
  else
    os << "discrete(s=" << (twice_s / 2) << ", xi=" << xi.str() << ", N=" << N
       << ")";
  return os.str();
}

bool series_contains(const SeriesLabel& label, const Weight& kappa) {
  if (!valid_weight(label.N, kappa)) return false;
  if (!parity_compatible(label.xi.twice, kappa.twice)) return false;
  const std::vector<long>& xi = label.xi.twice;
  const std::vector<long>& ka = kappa.twice;
  if (label.kind == SeriesLabel::Kind::principal) {
    if (label.N % 2 == 0) {
      // |k1| <= xi_1 <= k2 <= xi_2 <= ... <= xi_{r-1} <= k_r
      const int r = label.N / 2;
      long prev = std::labs(ka[0]);
      for (int i = 0; i < r - 1; ++i) {
        if (prev > xi[i] || xi[i] > ka[i + 1]) return false;
        prev = ka[i + 1];
      }
      return true;
    }
    // |xi_1| <= k_1 <= xi_2 <= k_2 <= ... <= xi_r <= k_r
    const int r = (label.N - 1) / 2;
    long prev = std::labs(xi[0]);
    for (int i = 0; i < r; ++i) {
      if (prev > ka[i]) return false;
      if (i + 1 < r) {
        if (ka[i] > xi[i + 1]) return false;
        prev = xi[i + 1];
      }
    }
    return true;
  }
  // discrete: sign(k1) = sign(s), |s| <= |k1| <= xi_1 <= k2 <= ... <= k_r
  const int r = label.N / 2;
  if ((label.twice_s > 0) != (ka[0] > 0)) return false;
  long prev = std::labs(ka[0]);
  if (prev < std::labs(label.twice_s)) return false;
  for (int i = 0; i < r - 1; ++i) {
    if (prev > xi[i] || xi[i] > ka[i + 1]) return false;
    prev = ka[i + 1];
  }
  return true;
}

std::vector<Weight> k_content(const SeriesLabel& label, long cutoff) {
  const int r = so_rank(label.N);
  const long tc = 2 * cutoff;
  const long par =
      label.xi.twice.empty() ? 0 : parity_of(label.xi.twice[0]);
  std::vector<long> values;
  for (long v = -tc; v <= tc; ++v)
    if (parity_of(v) == par) values.push_back(v);
  std::vector<Weight> out;
  std::vector<std::size_t> odo(r, 0);
  while (true) {
    Weight k;
    k.twice.resize(r);
    for (int i = 0; i < r; ++i) k.twice[i] = values[odo[i]];
    if (series_contains(label, k)) out.push_back(k);
    int pos = r - 1;
    while (pos >= 0 && ++odo[pos] == values.size()) odo[pos--] = 0;
    if (pos < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_k_singlet(const SeriesLabel& label) {
  Weight zero;
  zero.twice.assign(so_rank(label.N), 0);
  return series_contains(label, zero);
}

bool branching_contains(int N, const Weight& kappa, const Weight& xi) {
  // classical interlacing in the decreasing convention
  if (!valid_weight(N, kappa) || !valid_weight(N - 1, xi)) return false;
  if (!parity_compatible(kappa.twice, xi.twice)) return false;
  std::vector<long> lam(kappa.twice.rbegin(), kappa.twice.rend());
  std::vector<long> mu(xi.twice.rbegin(), xi.twice.rend());
  if (N % 2 == 1) {
    // SO(2n+1) > SO(2n): lam1 >= mu1 >= lam2 >= ... >= lam_n >= |mu_n|
    const int n = (N - 1) / 2;
    for (int i = 0; i < n; ++i) {
      const long mv = (i == n - 1) ? std::labs(mu[i]) : mu[i];
      if (lam[i] < mv) return false;
      if (i + 1 < n && mu[i] < lam[i + 1]) return false;
    }
    return true;
  }
  // SO(2n) > SO(2n-1): lam1 >= mu1 >= lam2 >= ... >= mu_{n-1} >= |lam_n|
  const int n = N / 2;
  for (int i = 0; i < n - 1; ++i) {
    if (lam[i] < mu[i]) return false;
    const long lnext = (i == n - 2) ? std::labs(lam[n - 1]) : lam[i + 1];
    if (mu[i] < lnext) return false;
  }
  return true;
}

std::pair<bool, bool> branching_reciprocity(int N, const Weight& kappa,
                                            const Weight& xi) {
  const bool in_series =
      series_contains(SeriesLabel::principal(N, xi), kappa);
  const bool in_branching = branching_contains(N, kappa, xi);
  return {in_series, in_branching};
}

void print_content(std::ostream& os, const SeriesLabel& label,
                   const std::vector<Weight>& content) {
  os << label.str() << "  [" << content.size() << " K-types]\n";
  std::size_t width = 0;
  for (const auto& w : content) width = std::max(width, w.str().size());
  int col = 0;
  for (const auto& w : content) {
    std::string s = w.str();
    s.resize(width, ' ');
    os << "  " << s;
    if (++col % 6 == 0) os << '\n';
  }
  if (col % 6 != 0) os << '\n';
}

nlohmann::json content_to_json(const SeriesLabel& label,
                               const std::vector<Weight>& content) {
  nlohmann::json j;
  j["label"] = label.str();
  j["count"] = content.size();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& w : content) {
    nlohmann::json e = nlohmann::json::array();
    for (long v : w.twice) e.push_back(v / 2.0);
    arr.push_back(e);
  }
  j["k_types"] = arr;
  return j;
}

}  // namespace hgs
