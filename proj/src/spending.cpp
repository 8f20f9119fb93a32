#include "seqmc/spending.hpp"

#include <cmath>
#include <map>
#include <string>

#include "seqmc/errors.hpp"
#include "seqmc/format.hpp"

namespace seqmc {

SpendingSequence SpendingSequence::default_rate(double epsilon, double k) {
  SpendingSequence s;
  s.kind = SpendingKind::default_rate;
  s.epsilon = epsilon;
  s.k = k;
  s.validate();
  return s;
}

SpendingSequence SpendingSequence::truncated(double epsilon, Step lower_cut, Step upper_cut, double k) {
  SpendingSequence s;
  s.kind = SpendingKind::truncated;
  s.epsilon = epsilon;
  s.k = k;
  s.lower_cut = lower_cut;
  s.upper_cut = upper_cut;
  s.validate();
  return s;
}

SpendingSequence SpendingSequence::power(double epsilon, double gamma, double k) {
  SpendingSequence s;
  s.kind = SpendingKind::power;
  s.epsilon = epsilon;
  s.gamma = gamma;
  s.k = k;
  s.validate();
  return s;
}

void SpendingSequence::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw PreconditionError("spending: epsilon must lie in (0,1)");
  if (!(k > 0.0) || !std::isfinite(k)) throw PreconditionError("spending: k must be positive");
  if (kind == SpendingKind::power && !(gamma > 0.0 && std::isfinite(gamma))) {
    throw PreconditionError("spending: gamma must be positive");
  }
  if (kind == SpendingKind::truncated && (lower_cut < 0 || upper_cut <= lower_cut)) {
    throw PreconditionError("spending: truncated needs 0 <= L < U");
  }
}

double spending_at(const SpendingSequence& seq, Step n) {
  if (n < 1) throw PreconditionError("spending_at: n must be >= 1");
  const double nn = static_cast<double>(n);
  switch (seq.kind) {
    case SpendingKind::default_rate:
      return seq.epsilon * nn / (nn + seq.k);
    case SpendingKind::truncated:
      if (n <= seq.lower_cut) return 0.0;
      if (n >= seq.upper_cut) return seq.epsilon;
      return seq.epsilon * nn / (nn + seq.k);
    case SpendingKind::power: {
      const double g = std::pow(nn, seq.gamma);
      return seq.epsilon * g / (g + seq.k);
    }
  }
  return 0.0;
}

std::string describe(const SpendingSequence& seq) {
  switch (seq.kind) {
    case SpendingKind::default_rate:
      return "default(k=" + format_double(seq.k) + ")";
    case SpendingKind::truncated:
      return "truncated(L=" + std::to_string(seq.lower_cut) + ",U=" + std::to_string(seq.upper_cut) +
             ",k=" + format_double(seq.k) + ")";
    case SpendingKind::power:
      return "power(gamma=" + format_double(seq.gamma) + ",k=" + format_double(seq.k) + ")";
  }
  return {};
}

SpendingSequence parse_spending(std::string_view text, double epsilon) {
  const auto fail = [&](const std::string& why) -> PreconditionError {
    return PreconditionError("bad spending descriptor '" + std::string(text) + "': " + why);
  };

  std::string_view name = text;
  std::string_view args;
  if (const auto open = text.find_first_of("(:"); open != std::string_view::npos) {
    name = text.substr(0, open);
    args = text.substr(open + 1);
    if (text[open] == '(') {
      if (args.empty() || args.back() != ')') throw fail("missing ')'");
      args.remove_suffix(1);
    }
  }

  std::map<std::string, std::string, std::less<>> kv;
  while (!args.empty()) {
    const auto comma = args.find(',');
    const std::string_view item = args.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) throw fail("expected key=value");
    kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1)));
    args = comma == std::string_view::npos ? std::string_view{} : args.substr(comma + 1);
  }

  const auto take = [&](const char* key, double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    double v = 0.0;
    try {
      v = parse_double(it->second);
    } catch (const std::invalid_argument&) {
      throw fail(std::string("non-numeric ") + key);
    }
    kv.erase(it);
    return v;
  };
  const auto take_step = [&](const char* key, Step fallback) {
    const double v = take(key, static_cast<double>(fallback));
    if (v != std::floor(v)) throw fail(std::string(key) + " must be an integer");
    return static_cast<Step>(v);
  };

  SpendingSequence seq;
  if (name == "default") {
    seq = SpendingSequence::default_rate(epsilon, take("k", 1000.0));
  } else if (name == "truncated") {
    const Step lo = take_step("L", 100);
    const Step hi = take_step("U", 10000);
    seq = SpendingSequence::truncated(epsilon, lo, hi, take("k", 1000.0));
  } else if (name == "power") {
    const double gamma = take("gamma", 0.5);
    seq = SpendingSequence::power(epsilon, gamma, take("k", 3.0));
  } else {
    throw fail("unknown kind '" + std::string(name) + "'");
  }
  if (!kv.empty()) throw fail("unknown key '" + kv.begin()->first + "'");
  return seq;
}

}  // namespace seqmc
