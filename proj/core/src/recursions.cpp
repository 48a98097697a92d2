#include "tropenum/recursions.hpp"

#include <functional>
#include <json.hpp>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

#include "tropenum/errors.hpp"

namespace tropenum {

namespace {

BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

void trim(std::vector<std::int64_t>& eps) {
  while (!eps.empty() && eps.back() == 0) eps.pop_back();
}

std::int64_t at(const std::vector<std::int64_t>& eps, std::size_t i) { return i < eps.size() ? eps[i] : 0; }

using Key = std::tuple<std::int64_t, std::int64_t, TangencyProfile>;

class Memo {
 public:
  bool find(const Key& k, BigInt& out) {
    std::lock_guard lock(mutex_);
    auto it = table_.find(k);
    if (it == table_.end()) return false;
    out = it->second;
    return true;
  }
  void insert(const Key& k, const BigInt& v) {
    std::lock_guard lock(mutex_);
    table_.try_emplace(k, v);
  }

 private:
  std::mutex mutex_;
  std::map<Key, BigInt> table_;
};

Memo& ch_memo() {
  static Memo memo;
  return memo;
}

BigInt ch(std::int64_t d, std::int64_t delta, const TangencyProfile& p, bool memoize);

// Second sum: the curve splits off L; alpha' <= alpha, beta' = beta + gamma.
BigInt split_sum(std::int64_t d, std::int64_t delta, const TangencyProfile& p, bool memoize) {
  BigInt total = 0;
  const std::int64_t ib = TangencyProfile::weight(p.beta);
  std::vector<std::int64_t> a2(p.alpha.size(), 0);
  std::function<void(std::size_t)> over_alpha = [&](std::size_t i) {
    if (i < p.alpha.size()) {
      for (std::int64_t v = 0; v <= p.alpha[i]; ++v) {
        a2[i] = v;
        over_alpha(i + 1);
      }
      return;
    }
    const std::int64_t room = d - 1 - TangencyProfile::weight(a2) - ib;
    if (room < 0) return;
    BigInt choose_alpha = 1;
    for (std::size_t k = 0; k < p.alpha.size(); ++k) choose_alpha *= binomial(p.alpha[k], a2[k]);
    // gamma with I gamma = room, built by order from the largest down.
    std::vector<std::int64_t> gamma(static_cast<std::size_t>(std::max<std::int64_t>(room, 0)), 0);
    std::function<void(std::int64_t, std::int64_t)> over_gamma = [&](std::int64_t order, std::int64_t left) {
      if (order == 0) {
        if (left != 0) return;
        const std::int64_t delta2 = delta - (d - 1) + TangencyProfile::length(gamma);
        if (delta2 < 0) return;
        std::vector<std::int64_t> b2(std::max(p.beta.size(), gamma.size()), 0);
        BigInt choose_beta = 1;
        for (std::size_t k = 0; k < b2.size(); ++k) {
          b2[k] = at(p.beta, k) + at(gamma, k);
          choose_beta *= binomial(b2[k], at(p.beta, k));
        }
        const BigInt sub = ch(d - 1, delta2, TangencyProfile(a2, b2), memoize);
        if (sub != 0) total += TangencyProfile::power_weight(gamma) * choose_alpha * choose_beta * sub;
        return;
      }
      for (std::int64_t c = 0; c * order <= left; ++c) {
        gamma[static_cast<std::size_t>(order - 1)] = c;
        over_gamma(order - 1, left - c * order);
      }
      gamma[static_cast<std::size_t>(order - 1)] = 0;
    };
    over_gamma(room, room);
  };
  over_alpha(0);
  return total;
}

BigInt ch(std::int64_t d, std::int64_t delta, const TangencyProfile& p, bool memoize) {
  if (delta < 0 || delta > d * (d - 1) / 2) return 0;
  if (d == 1) return delta == 0 ? 1 : 0;
  const Key key{d, delta, p};
  BigInt cached;
  if (memoize && ch_memo().find(key, cached)) return cached;
  BigInt total = 0;
  // A point of tangency order k becomes fixed.
  for (std::size_t k = 0; k < p.beta.size(); ++k) {
    if (p.beta[k] == 0) continue;
    auto alpha = p.alpha;
    auto beta = p.beta;
    if (alpha.size() <= k) alpha.resize(k + 1, 0);
    ++alpha[k];
    --beta[k];
    total += BigInt(static_cast<long>(k + 1)) * ch(d, delta, TangencyProfile(alpha, beta), memoize);
  }
  total += split_sum(d, delta, p, memoize);
  if (memoize) ch_memo().insert(key, total);
  return total;
}

}  // namespace

TangencyProfile::TangencyProfile(std::vector<std::int64_t> a, std::vector<std::int64_t> b)
    : alpha(std::move(a)), beta(std::move(b)) {
  for (auto v : alpha) {
    if (v < 0) throw InvalidArgument("tangency profile entries must be non-negative");
  }
  for (auto v : beta) {
    if (v < 0) throw InvalidArgument("tangency profile entries must be non-negative");
  }
  trim(alpha);
  trim(beta);
}

std::int64_t TangencyProfile::weight(const std::vector<std::int64_t>& eps) {
  std::int64_t w = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) w += static_cast<std::int64_t>(i + 1) * eps[i];
  return w;
}

BigInt TangencyProfile::power_weight(const std::vector<std::int64_t>& eps) {
  BigInt w = 1;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    BigInt f;
    mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(i + 1), static_cast<unsigned long>(eps[i]));
    w *= f;
  }
  return w;
}

std::int64_t TangencyProfile::length(const std::vector<std::int64_t>& eps) {
  std::int64_t n = 0;
  for (auto v : eps) n += v;
  return n;
}

BigInt kontsevich(std::int64_t d) {
  if (d < 1) throw InvalidArgument("kontsevich: degree must be at least 1");
  static std::mutex mutex;
  static std::vector<BigInt> values{0, 1};
  std::lock_guard lock(mutex);
  for (auto n = static_cast<std::int64_t>(values.size()); n <= d; ++n) {
    BigInt sum = 0;
    for (std::int64_t k = 1; k < n; ++k) {
      const std::int64_t l = n - k;
      const BigInt bracket = BigInt(static_cast<long>(l)) * binomial(3 * n - 4, 3 * k - 2) -
                             BigInt(static_cast<long>(k)) * binomial(3 * n - 4, 3 * k - 1);
      sum += values[static_cast<std::size_t>(k)] * values[static_cast<std::size_t>(l)] * BigInt(static_cast<long>(k * k * l)) * bracket;
    }
    values.push_back(sum);
  }
  return values[static_cast<std::size_t>(d)];
}

BigInt caporaso_harris(std::int64_t d, std::int64_t delta, const TangencyProfile& profile, bool memoize) {
  if (d < 1) throw InvalidArgument("caporaso_harris: degree must be at least 1");
  if (TangencyProfile::weight(profile.alpha) + TangencyProfile::weight(profile.beta) != d) {
    throw InconsistentProfile("I alpha + I beta must equal the degree");
  }
  const TangencyProfile normalized(profile.alpha, profile.beta);
  return ch(d, delta, normalized, memoize);
}

BigInt severi_degree(std::int64_t d, std::int64_t delta) {
  if (d < 1) throw InvalidArgument("severi_degree: degree must be at least 1");
  return caporaso_harris(d, delta, TangencyProfile({}, {d}));
}

std::string kontsevich_table(std::int64_t max_d, TableFormat format) {
  if (max_d < 1) throw InvalidArgument("max degree must be at least 1");
  std::ostringstream out;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (format == TableFormat::Tsv) out << "d\tN\n";
  for (std::int64_t d = 1; d <= max_d; ++d) {
    const std::string n = kontsevich(d).get_str();
    if (format == TableFormat::Tsv) {
      out << d << '\t' << n << '\n';
    } else {
      rows.push_back({{"d", d}, {"N", n}});
    }
  }
  if (format == TableFormat::Json) out << rows.dump() << '\n';
  return out.str();
}

std::string severi_table(std::int64_t max_d, TableFormat format) {
  if (max_d < 1) throw InvalidArgument("max degree must be at least 1");
  std::ostringstream out;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  if (format == TableFormat::Tsv) out << "d\tdelta\tN\n";
  for (std::int64_t d = 1; d <= max_d; ++d) {
    for (std::int64_t delta = 0; delta <= d * (d - 1) / 2; ++delta) {
      const std::string n = severi_degree(d, delta).get_str();
      if (format == TableFormat::Tsv) {
        out << d << '\t' << delta << '\t' << n << '\n';
      } else {
        rows.push_back({{"d", d}, {"delta", delta}, {"N", n}});
      }
    }
  }
  if (format == TableFormat::Json) out << rows.dump() << '\n';
  return out.str();
}

}  // namespace tropenum
