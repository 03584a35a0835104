#include "curvcompat/random.hpp"

namespace curvcompat {

Matrix random_matrix(const RandomSpec& spec, Dim n) {
  SeededGenerator gen(spec.seed);
  Matrix m(n);
  for (auto& v : m.values()) v = gen.uniform(-spec.scale, spec.scale);
  return m;
}

Rank4 random_rank4(const RandomSpec& spec, Dim n) {
  SeededGenerator gen(spec.seed);
  Rank4 t(n);
  for (auto& v : t.values()) v = gen.uniform(-spec.scale, spec.scale);
  return t;
}

Sym2 random_sym2(const RandomSpec& spec, Dim n) {
  SeededGenerator gen(spec.seed);
  Sym2 s(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) s.set(i, j, gen.uniform(-spec.scale, spec.scale));
  return s;
}

MetricValue random_metric(const RandomSpec& spec, Dim n, std::span<const int> signature) {
  if (static_cast<int>(signature.size()) != n.value())
    throw DimensionError("random_metric: signature length must equal n");
  SeededGenerator gen(spec.seed);
  Matrix q = identity_matrix(n);
  for (auto& v : q.values()) v += 0.3 * gen.uniform(-1.0, 1.0);
  Matrix g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        if (signature[k] != 1 && signature[k] != -1)
          throw PreconditionError("random_metric: signature entries must be +1 or -1");
        acc += q(k, i) * signature[k] * q(k, j);
      }
      g(i, j) = acc;
    }
  return MetricValue(Sym2(g));
}

GCT random_gct(const RandomSpec& spec, Dim n, double floor) {
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    RandomSpec s = spec;
    s.seed = spec.seed + attempt * 0x9E3779B97F4A7C15ULL;
    GCT k = gct_project(random_rank4(s, n));
    if (norm(k.components()) >= floor) return k;
  }
  throw PreconditionError("random_gct: projection stayed degenerate after 100 attempts");
}

}  // namespace curvcompat
