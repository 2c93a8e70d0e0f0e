#include "spinform/suites.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <span>
#include <thread>

#include "spinform/verifier.hpp"

namespace spinform {

int worker_threads() {
  if (const char* env = std::getenv("SPINFORM_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kNA = -1.0;  // sample does not apply to this stat
constexpr long kChunk = 32;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

struct Stat {
  double max = 0;
  long count = 0;
  long fails = 0;
};

// Runs f(rng, i, out) for i < n in fixed chunks; each chunk has its own seeded generator so the
// result does not depend on the thread count. Negative outputs are skipped, NaN counts as a failure.
template <class F>
std::vector<Stat> sweep(long n, std::uint64_t seed, const std::string& salt, std::vector<double> tols, F f) {
  const std::size_t m = tols.size();
  const long chunks = (n + kChunk - 1) / kChunk;
  std::vector<std::vector<Stat>> per(chunks, std::vector<Stat>(m));
  std::vector<std::exception_ptr> errors(chunks);
  std::atomic<long> next{0};
  const std::uint64_t h = fnv1a(salt);

  auto work = [&] {
    std::vector<double> out(m);
    for (long c; (c = next.fetch_add(1)) < chunks;) {
      try {
        std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                         static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                         static_cast<std::uint32_t>(c)};
        Rng rng(ss);
        for (long i = c * kChunk; i < std::min(n, (c + 1) * kChunk); ++i) {
          std::fill(out.begin(), out.end(), kNA);
          f(rng, i, std::span<double>(out));
          for (std::size_t k = 0; k < m; ++k) {
            double v = out[k];
            if (v < 0) continue;
            Stat& s = per[c][k];
            ++s.count;
            if (std::isnan(v)) v = std::numeric_limits<double>::infinity();
            s.max = std::max(s.max, v);
            if (!(v <= tols[k])) ++s.fails;
          }
        }
      } catch (...) {
        errors[c] = std::current_exception();
      }
    }
  };

  const int threads = static_cast<int>(std::min<long>(worker_threads(), std::max(1L, chunks)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Stat> total(m);
  for (const auto& chunk : per)
    for (std::size_t k = 0; k < m; ++k) {
      total[k].max = std::max(total[k].max, chunk[k].max);
      total[k].count += chunk[k].count;
      total[k].fails += chunk[k].fails;
    }
  return total;
}

ReportEntry entry(std::string id, const Stat& s, double tol, double wall_ms) {
  ReportEntry e;
  e.id = std::move(id);
  e.max_residual = s.max;
  e.tol = tol;
  e.pass = s.fails == 0 && s.max <= tol;
  e.wall_ms = wall_ms;
  e.metrics["samples"] = static_cast<double>(s.count);
  e.metrics["failures"] = static_cast<double>(s.fails);
  return e;
}

ReportEntry single(std::string id, double residual, double tol) {
  ReportEntry e;
  e.id = std::move(id);
  e.max_residual = std::isnan(residual) ? std::numeric_limits<double>::infinity() : residual;
  e.tol = tol;
  e.pass = e.max_residual <= tol;
  return e;
}

double rel(double err, double scale) { return err / std::max(scale, 1e-300); }

Multivector pi_pow(const Multivector& a, int k) { return (k & 1) ? involution(a, Involution::parity) : a; }

std::vector<int> branches(const Signature& sig, int ell) {
  if (sig.dim() % 2 == 0) return {0};
  if (ell != 0) return {ell};
  return {1, -1};
}

std::string ell_tag(int ell) { return ell == 0 ? "" : (ell > 0 ? ".ell+" : ".ell-"); }
std::string s_tag(int s) { return s > 0 ? "s+" : "s-"; }

void require_sig(const Signature& sig) {
  if (sig.p < 0 || sig.q < 0 || sig.dim() < 1 || sig.dim() > kMaxDim)
    throw ContractViolation("signature needs 1 <= p + q <= 8, got " + sig.str());
}

}  // namespace

// ---------------------------------------------------------------- algebra

std::vector<ReportEntry> algebra_suite(const AlgebraSuiteOptions& opt) {
  require_sig(opt.sig);
  const Signature sig = opt.sig;
  const int d = sig.dim();
  const bool odd = d % 2 == 1;
  const double tol = opt.tol;
  std::vector<ReportEntry> out;
  auto t0 = Clock::now();

  const Multivector nu = volume_form(sig);
  auto grade_of = [&](Rng& rng) { return std::uniform_int_distribution<int>(0, d)(rng); };

  enum {
    kAssoc, kExpand, kVanish, kSym, kWedge, kPair, kHodgeDelta, kRightVol, kLeftVol, kCentral, kOneForm,
    kInvol, kAuto, kHodgeDef, kCount
  };
  const char* names[kCount] = {"associativity",        "graded_expansion",   "delta.vanishing",
                               "delta.symmetry",       "delta.wedge",        "delta.pairing",
                               "delta.hodge",          "volume.right",       "volume.left",
                               "volume.centrality",    "one_form_square",    "involutions",
                               "involutions.morphism", "hodge.defining_relation"};

  auto stats = sweep(opt.samples, opt.seed, "algebra" + sig.str(), std::vector<double>(kCount, tol),
                     [&](Rng& rng, long, std::span<double> r) {
                       const Multivector a = random_multivector(sig, rng);
                       const Multivector b = random_multivector(sig, rng);
                       const Multivector c = random_multivector(sig, rng);
                       const double na = a.norm(), nb = b.norm(), nc = c.norm();
                       r[kAssoc] = rel(((a * b) * c - a * (b * c)).norm(), na * nb * nc);

                       const int j = grade_of(rng), k = grade_of(rng);
                       const Multivector x = random_homogeneous(sig, j, rng);
                       const Multivector y = random_homogeneous(sig, k, rng);
                       const double nx = x.norm(), ny = y.norm();
                       Multivector sum(sig);
                       for (int m = 0; m <= d; ++m) {
                         const int e = m * (m + 1) / 2 + j * m;
                         sum += ((e & 1) ? -1.0 : 1.0) * generalized_product(x, b, m);
                       }
                       r[kExpand] = rel((x * b - sum).norm(), nx * nb);

                       const int lo = std::min(j, k);
                       if (lo < d) {
                         const int m = std::uniform_int_distribution<int>(lo + 1, d)(rng);
                         r[kVanish] = rel(generalized_product(x, y, m).norm(), nx * ny);
                       }
                       {
                         const int m = std::uniform_int_distribution<int>(0, lo)(rng);
                         const double sg = (((j - m) * (k - m)) & 1) ? -1.0 : 1.0;
                         r[kSym] = rel((generalized_product(x, y, m) - sg * generalized_product(y, x, m)).norm(), nx * ny);
                       }
                       r[kWedge] = rel((generalized_product(x, y, 0) - wedge(x, y)).norm(), nx * ny);
                       const Multivector y2 = random_homogeneous(sig, j, rng);
                       r[kPair] = rel(std::abs(generalized_product(x, y2, j).scalar_part() - metric_pairing(x, y2)) +
                                          (generalized_product(x, y2, j) - generalized_product(x, y2, j).grade(0)).norm(),
                                      nx * y2.norm());
                       if (j + k <= d)
                         r[kHodgeDelta] =
                             rel((generalized_product(x, hodge_star(y), j) - hodge_star(wedge(y, x))).norm(), nx * ny);

                       r[kRightVol] = rel((a * nu - hodge_star(involution(a, Involution::reversion))).norm(), na);
                       r[kLeftVol] = rel(
                           (nu * a - hodge_star(pi_pow(involution(a, Involution::reversion), d - 1))).norm(), na);
                       r[kCentral] = rel((nu * a - pi_pow(a, d - 1) * nu).norm(), na);

                       const Multivector th = random_homogeneous(sig, 1, rng);
                       r[kOneForm] = rel((th * th - Multivector::scalar(sig, metric_pairing(th, th))).norm(),
                                         th.norm() * th.norm());

                       const Multivector pa = involution(a, Involution::parity);
                       const Multivector ta = involution(a, Involution::reversion);
                       double inv = (involution(pa, Involution::parity) - a).norm();
                       inv = std::max(inv, (involution(ta, Involution::reversion) - a).norm());
                       inv = std::max(inv, (involution(ta, Involution::parity) - involution(pa, Involution::reversion)).norm());
                       inv = std::max(inv, (involution(a, Involution::both) - involution(pa, Involution::reversion)).norm());
                       r[kInvol] = rel(inv, na);
                       const Multivector ab = a * b;
                       double mor = (involution(ab, Involution::parity) -
                                     involution(a, Involution::parity) * involution(b, Involution::parity))
                                        .norm();
                       mor = std::max(mor, (involution(ab, Involution::reversion) -
                                            involution(b, Involution::reversion) * involution(a, Involution::reversion))
                                               .norm());
                       r[kAuto] = rel(mor, na * nb);
                       r[kHodgeDef] = rel((wedge(x, hodge_star(y2)) - metric_pairing(x, y2) * nu).norm(), nx * y2.norm());
                     });
  const double wall = ms_since(t0);
  for (int i = 0; i < kCount; ++i) out.push_back(entry(std::string("algebra.") + names[i], stats[i], tol, wall));

  {
    const double want = odd ? (((sig.p - sig.q - 1) / 2) % 2 ? -1.0 : 1.0) : (((sig.p - sig.q) / 2) % 2 ? -1.0 : 1.0);
    ReportEntry e = single("algebra.volume.square", (nu * nu - Multivector::scalar(sig, want)).norm(), tol);
    e.metrics["expected"] = want;
    out.push_back(e);
  }

  if (odd) {
    t0 = Clock::now();
    const Multivector nc = complex_volume(sig);
    const cplx phase = ipow(sig.q + (d - 1) / 2);
    out.push_back(single("truncated.complex_volume.square", (nc * nc - Multivector::scalar(sig, 1.0)).norm(), tol));

    enum { kCentralC, kIdem, kSum, kOrth, kEigen, kMultVol, kVeeAssoc, kVeePres, kVeeUnit, kSection, kTCount };
    const char* tnames[kTCount] = {"truncated.complex_volume.central", "truncated.projection.idempotent",
                                   "truncated.projection.sum",         "truncated.projection.orthogonal",
                                   "truncated.projection.eigen",       "truncated.volume_multiplication",
                                   "truncated.vee.associativity",      "truncated.vee.presentations",
                                   "truncated.vee.unit",               "truncated.section"};
    auto ts = sweep(opt.samples, opt.seed, "truncated" + sig.str(), std::vector<double>(kTCount, tol),
                    [&](Rng& rng, long i, std::span<double> r) {
                      const int ell = (i & 1) ? -1 : 1;
                      const Multivector a = random_multivector(sig, rng);
                      const double na = a.norm();
                      r[kCentralC] = rel((nc * a - a * nc).norm(), na);
                      const Multivector P = project_ell(a, ell);
                      r[kIdem] = rel((project_ell(P, ell) - P).norm(), na);
                      r[kSum] = rel((project_ell(a, 1) + project_ell(a, -1) - a).norm(), na);
                      r[kOrth] = rel(project_ell(project_ell(a, -1), 1).norm(), na);
                      r[kEigen] = rel((nc * P - static_cast<double>(ell) * P).norm(), na);
                      r[kMultVol] = rel((a * nc - phase * hodge_star(involution(a, Involution::reversion))).norm(), na);
                      const TruncatedMultivector x = random_truncated(sig, ell, rng);
                      const TruncatedMultivector y = random_truncated(sig, ell, rng);
                      const TruncatedMultivector z = random_truncated(sig, ell, rng);
                      const double s3 = x.mv().norm() * y.mv().norm() * z.mv().norm();
                      r[kVeeAssoc] =
                          rel((vee_product(vee_product(x, y), z).mv() - vee_product(x, vee_product(y, z)).mv()).norm(), s3);
                      r[kVeePres] =
                          rel((vee_product(x, y).mv() - vee_product_hodge(x, y).mv()).norm(), x.mv().norm() * y.mv().norm());
                      const TruncatedMultivector one(Multivector::scalar(sig, 1.0), ell);
                      r[kVeeUnit] = rel((vee_product(one, x).mv() - x.mv()).norm() + (vee_product(x, one).mv() - x.mv()).norm(),
                                        x.mv().norm());
                      r[kSection] = rel((2.0 * project_lower(lift(x)) - x.mv()).norm(), x.mv().norm());
                    });
    const double tw = ms_since(t0);
    for (int i = 0; i < kTCount; ++i) out.push_back(entry(tnames[i], ts[i], tol, tw));
  }
  return out;
}

// ---------------------------------------------------------------- representation

std::vector<ReportEntry> representation_suite(const RepresentationSuiteOptions& opt) {
  require_sig(opt.sig);
  const Signature sig = opt.sig;
  const bool odd = sig.dim() % 2 == 1;
  std::vector<ReportEntry> out;
  for (int ell : branches(sig, opt.ell)) {
    const auto t0 = Clock::now();
    const SpinorRep rep = build_rep(sig, ell);
    const std::string pre = "rep" + ell_tag(ell) + ".";
    out.push_back(single(pre + "clifford", clifford_residual(rep), opt.tol));
    out.push_back(single(pre + (odd ? "volume_branch" : "chirality"), volume_residual(rep), opt.tol));
    out.back().metrics["n"] = rep.n;

    auto st = sweep(opt.samples, opt.seed, pre + sig.str(), {opt.tol, opt.tol}, [&](Rng& rng, long, std::span<double> r) {
      if (odd) {
        const TruncatedMultivector a = random_truncated(sig, ell, rng);
        const TruncatedMultivector b = random_truncated(sig, ell, rng);
        const Matrix qa = quantize(a, rep), qb = quantize(b, rep);
        r[0] = rel((quantize(vee_product(a, b), rep) - qa * qb).norm(), qa.norm() * qb.norm());
        r[1] = rel((dequantize(qa, rep) - a.mv()).norm(), a.mv().norm());
      } else {
        const Multivector a = random_multivector(sig, rng);
        const Multivector b = random_multivector(sig, rng);
        const Matrix qa = quantize(a, rep), qb = quantize(b, rep);
        r[0] = rel((quantize(a * b, rep) - qa * qb).norm(), qa.norm() * qb.norm());
        r[1] = rel((dequantize(qa, rep) - a).norm(), a.norm());
      }
    });
    const double w = ms_since(t0);
    out.push_back(entry(pre + "homomorphism", st[0], opt.tol, w));
    out.push_back(entry(pre + "dequantize_roundtrip", st[1], opt.tol, w));

    for (auto kind : {PairingKind::hermitian, PairingKind::bilinear})
      for (int s : {1, -1}) {
        const std::string id = "pairing" + ell_tag(ell) + "." + to_string(kind) + "." + s_tag(s);
        const auto P = solve_admissible(rep, s, kind);
        if (!P) {
          ReportEntry e = single(id + ".admissibility", 0.0, opt.tol);
          e.note = "adjoint type not realized";
          e.metrics["realized"] = 0;
          out.push_back(e);
          continue;
        }
        ReportEntry e = single(id + ".admissibility", admissibility_residual(rep, *P), opt.tol);
        e.metrics["realized"] = 1;
        e.metrics["sigma"] = P->sigma;
        out.push_back(e);
        const auto t1 = Clock::now();
        auto law = sweep(opt.samples, opt.seed, id, {opt.tol, opt.tol}, [&](Rng& rng, long, std::span<double> r) {
          const Multivector z = random_multivector(sig, rng);
          const Vector e1 = random_vector(rep.n, rng), e2 = random_vector(rep.n, rng);
          const Multivector tz = adjoint_twist(kind == PairingKind::hermitian ? z.conj() : z, s);
          const Matrix Qz = quantize(z, rep), Qt = quantize(tz, rep);
          const double sc = Qz.norm() * e1.norm() * e2.norm();
          r[0] = rel(std::abs(evaluate(*P, Qz * e1, e2) - evaluate(*P, e1, Qt * e2)), sc);
          const cplx a = evaluate(*P, e1, e2), b = evaluate(*P, e2, e1);
          const cplx sym = kind == PairingKind::hermitian ? a - std::conj(b) : a - static_cast<double>(P->sigma) * b;
          r[1] = rel(std::abs(sym), e1.norm() * e2.norm());
        });
        const double w1 = ms_since(t1);
        out.push_back(entry(id + ".adjoint_law", law[0], opt.tol, w1));
        out.push_back(entry(id + ".symmetry", law[1], opt.tol, w1));
      }
  }
  return out;
}

// ---------------------------------------------------------------- squares

namespace {

bool has_normal_form(const Signature& sig, PairingKind kind, int s, std::optional<int> mu) {
  const int p = sig.p, q = sig.q;
  if (kind == PairingKind::hermitian) {
    if (s != 1) return false;
    if (q == 0 && (p == 2 || p == 3 || p == 4)) return true;
    return q == 1 && (p == 3 || p == 5) && mu.has_value();
  }
  return q == 1 && (p == 3 || p == 5) && mu.has_value();
}

// Chirality schedule: Lorentzian (3,1), (5,1) use chiral spinors throughout; other even signatures
// alternate between unconstrained and both chiralities.
std::optional<int> chirality_for(const Signature& sig, long i) {
  if (sig.dim() % 2) return std::nullopt;
  if (sig.q == 1 && (sig.p == 3 || sig.p == 5)) return (i & 1) ? -1 : 1;
  switch (i % 3) {
    case 1: return 1;
    case 2: return -1;
    default: return std::nullopt;
  }
}

double max_part(const NormalForm& nf) {
  double m = 0;
  for (const auto& [k, v] : nf.residuals) m = std::max(m, std::isnan(v) ? std::numeric_limits<double>::infinity() : v);
  return m;
}

}  // namespace

std::vector<ReportEntry> squares_suite(const SquaresSuiteOptions& opt) {
  require_sig(opt.sig);
  const Signature sig = opt.sig;
  const bool odd = sig.dim() % 2 == 1;
  std::vector<ReportEntry> out;
  if (opt.representation) {
    RepresentationSuiteOptions ro;
    ro.sig = sig;
    ro.ell = opt.ell;
    ro.samples = std::min(opt.samples, 200);
    ro.seed = opt.seed;
    out = representation_suite(ro);
  }
  std::vector<PairingKind> kinds = opt.kind ? std::vector<PairingKind>{*opt.kind}
                                            : std::vector<PairingKind>{PairingKind::hermitian, PairingKind::bilinear};
  std::vector<int> ss = opt.s ? std::vector<int>{*opt.s} : std::vector<int>{1, -1};
  const long n_annihilators = opt.annihilators > 0 ? opt.annihilators : std::max(1, opt.samples / 10);
  const double ann_tol = 1e-9;

  for (int ell : branches(sig, opt.ell)) {
    const SpinorRep rep = build_rep(sig, ell);
    for (PairingKind kind : kinds)
      for (int s : ss) {
        const bool herm = kind == PairingKind::hermitian;
        const std::string id = "square" + ell_tag(ell) + "." + to_string(kind) + "." + s_tag(s);
        const auto P = solve_admissible(rep, s, kind);
        if (!P) {
          ReportEntry e = single(id, 0.0, opt.tol);
          e.note = "adjoint type not realized";
          e.metrics["realized"] = 0;
          out.push_back(e);
          continue;
        }
        const auto t0 = Clock::now();
        enum { kAxioms, kExpansion, kNormal, kRound, kWitness, kCount };
        const double rt_tol = herm ? opt.tol : opt.roundtrip_tol;
        auto st = sweep(
            opt.samples, opt.seed, id + sig.str(), {opt.tol, opt.tol, opt.tol, rt_tol, opt.tol},
            [&](Rng& rng, long i, std::span<double> r) {
              const std::optional<int> mu = chirality_for(sig, i);
              const Spinor eta = random_spinor(rep, rng, mu);
              const cplx kappa = (herm && (i & 1)) ? random_phase(rng) : cplx(1.0);
              const Multivector a = herm ? hermitian_square(eta, kappa, rep, *P) : bilinear_square(eta, rep, *P);
              const Multivector ad =
                  herm ? hermitian_square_dequantized(eta, kappa, rep, *P) : bilinear_square_dequantized(eta, rep, *P);
              r[kExpansion] = rel((a - ad).norm(), a.norm());

              AxiomOptions ao;
              ao.kind = kind;
              ao.s = s;
              ao.kappa = kappa;
              ao.sigma = P->sigma;
              ao.mu = mu;
              ao.ell = ell;
              ao.tol = opt.tol;
              ao.seed = rng();
              const AxiomReport ar = check_square_axioms(a, ao);
              r[kAxioms] = ar.verdict == "pass" || ar.verdict == "fail" ? ar.max_residual()
                                                                          : std::numeric_limits<double>::infinity();

              if (kappa == cplx(1.0) && has_normal_form(sig, kind, s, mu)) r[kNormal] = max_part(normal_form(a, kind, mu, opt.tol));

              try {
                const Spinor back = reconstruct_spinor(a, rep, *P, kappa, 1e-9);
                if (herm) {
                  r[kRound] = rel((hermitian_square(back, kappa, rep, *P) - a).norm(), a.norm());
                } else {
                  const double en = eta.v.norm();
                  r[kRound] = rel(std::min((back.v - eta.v).norm(), (back.v + eta.v).norm()), en);
                }
              } catch (const NotASquare&) {
                r[kRound] = std::numeric_limits<double>::infinity();
              }

              if (i < opt.witness_samples && ar.witness) {
                double w = 0;
                for (int t = 0; t < 50; ++t) {
                  Multivector beta = random_multivector(sig, rng);
                  if (odd) beta = project_lower(beta);
                  beta *= 1.0 / beta.norm();
                  AxiomOptions bo = ao;
                  bo.beta = beta;
                  const AxiomReport br = check_square_axioms(a, bo);
                  // a witness with vanishing scalar part is uninformative, not a failure
                  if (br.verdict == "degenerate candidate") continue;
                  w = std::max(w, br.fierz);
                }
                r[kWitness] = w;
              }
            });
        const double w = ms_since(t0);
        auto add = [&](const std::string& suffix, const Stat& s, double tol) {
          if (s.count == 0) return;
          ReportEntry e = entry(id + "." + suffix, s, tol, w);
          e.metrics["sigma"] = P->sigma;
          out.push_back(e);
        };
        add("axioms", st[kAxioms], opt.tol);
        add("expansion_vs_dequantization", st[kExpansion], opt.tol);
        add("normal_form", st[kNormal], opt.tol);
        add("roundtrip", st[kRound], rt_tol);
        add("witness_independence", st[kWitness], opt.tol);

        // Dequantization: algebraic and matrix annihilation statements agree; for Hermitian
        // squares the transposed condition agrees as well.
        const auto t1 = Clock::now();
        auto dq = sweep(n_annihilators, opt.seed, id + ".dequantization" + sig.str(), {ann_tol, 0.0},
                        [&](Rng& rng, long i, std::span<double> r) {
                          const Spinor eta = random_spinor(rep, rng, chirality_for(sig, i));
                          const Multivector a = herm ? hermitian_square(eta, 1.0, rep, *P) : bilinear_square(eta, rep, *P);
                          const Vector& v = eta.v;
                          Matrix R = Matrix::Zero(rep.n, rep.n);
                          for (int x = 0; x < rep.n; ++x)
                            for (int y = 0; y < rep.n; ++y) R(x, y) = random_complex(rng);
                          const Matrix Q = R * (Matrix::Identity(rep.n, rep.n) - v * v.adjoint() / v.squaredNorm());
                          const Multivector qa = dequantize(Q, rep);
                          Multivector qr = random_multivector(sig, rng);
                          if (odd) qr = project_lower(qr);
                          double disagree = 0;
                          const ConstraintCheck ca = check_constrained(qa, a, ell, ann_tol, &rep, &v);
                          const ConstraintCheck cr = check_constrained(qr, a, ell, ann_tol, &rep, &v);
                          if (!ca.consistent || !ca.annihilates) disagree += 1;
                          if (!cr.consistent || cr.annihilates) disagree += 1;
                          if (herm) {
                            auto transposed = [&](const Multivector& q) {
                              const Multivector tq = adjoint_twist(q.conj(), s);
                              const Multivector lhs = algebra_product(a, odd ? project_lower(tq) : tq, ell);
                              return rel(lhs.norm(), q.norm() * a.norm()) <= ann_tol;
                            };
                            if (transposed(qa) != ca.annihilates) disagree += 1;
                            if (transposed(qr) != cr.annihilates) disagree += 1;
                          }
                          r[0] = std::max(ca.residual, ca.matrix_residual);
                          r[1] = disagree;
                        });
        ReportEntry e = entry(id + ".dequantization", dq[0], ann_tol, ms_since(t1));
        e.metrics["disagreements"] = static_cast<double>(dq[1].fails);
        e.pass = e.pass && dq[1].fails == 0;
        out.push_back(e);
      }

    // Hermitian and bilinear squares of one chiral spinor in (5,1).
    const bool both = std::find(kinds.begin(), kinds.end(), PairingKind::hermitian) != kinds.end() &&
                      std::find(kinds.begin(), kinds.end(), PairingKind::bilinear) != kinds.end();
    if (both && sig.p == 5 && sig.q == 1) {
      const auto H = solve_admissible(rep, 1, PairingKind::hermitian);
      for (int s : ss) {
        const auto B = solve_admissible(rep, s, PairingKind::bilinear);
        if (!H || !B) continue;
        const std::string id = "compatibility.bilinear." + s_tag(s);
        const auto t0 = Clock::now();
        auto st = sweep(std::max(1, opt.samples / 10), opt.seed, id, {1e-9, 0.0}, [&](Rng& rng, long i, std::span<double> r) {
          const int mu = (i & 1) ? -1 : 1;
          const Spinor eta = random_spinor(rep, rng, mu);
          const Spinor other = random_spinor(rep, rng, mu);
          const Multivector ah = hermitian_square(eta, 1.0, rep, *H);
          const CompatibilityReport c = hermitian_bilinear_compatibility(ah, bilinear_square(eta, rep, *B), mu);
          double m = 0;
          for (const auto& [k, v] : c.residuals) m = std::max(m, v);
          r[0] = m;
          const CompatibilityReport bad = hermitian_bilinear_compatibility(ah, bilinear_square(other, rep, *B), mu);
          r[1] = bad.pass ? 1.0 : 0.0;
        });
        ReportEntry e = entry(id, st[0], 1e-9, ms_since(t0));
        e.metrics["mismatch_undetected"] = static_cast<double>(st[1].fails);
        e.metrics["phase_blind"] = 1;
        e.pass = e.pass && st[1].fails == 0;
        out.push_back(e);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- families

std::vector<ReportEntry> family_suite(const std::string& family, const Params& params, int points, std::uint64_t seed,
                                      std::optional<double> tol) {
  const auto t0 = Clock::now();
  const FamilyReport rep = verify_family(family, params, points, seed, tol);
  const double w = ms_since(t0);
  std::vector<ReportEntry> out;
  for (const auto& [check, res] : rep.checks) {
    ReportEntry e = single("family." + family + "." + check, res.max(), res.tol);
    for (const auto& [k, v] : res.parts) e.metrics[k] = v;
    if (auto it = rep.info.find(check); it != rep.info.end())
      for (const auto& [k, v] : it->second) e.metrics[k] = v;
    e.metrics["points"] = points;
    e.wall_ms = w / std::max<std::size_t>(1, rep.checks.size());
    out.push_back(e);
  }
  return out;
}

// ---------------------------------------------------------------- radial ODE

namespace {

double closed_form_error(const RadialState& s, const RadialClosedForm& cf) {
  auto err = [](double num, double ref) { return std::abs(num - ref) / std::max(1.0, std::abs(ref)); };
  return std::max({err(s.K, cf.K(s.r)), err(s.F, cf.F(s.r)), err(s.Hbar, cf.Hbar(s.r))});
}

}  // namespace

OdeRun run_ode(const OdeOptions& opt) {
  const auto t0 = Clock::now();
  OdeRun run;
  RadialInit init;
  init.r0 = opt.r0;
  init.F0 = opt.F0;
  const RadialState s0 = radial_initial(opt.params, init);
  run.trajectory = radial_integrate(s0, opt.params, opt.r1, opt.step);
  const double w = ms_since(t0);

  ReportEntry drift = single("ode.constraint_drift", run.trajectory.max_abs_C, opt.drift_tol);
  drift.wall_ms = w;
  drift.metrics["steps"] = static_cast<double>(run.trajectory.states.size() - 1);
  drift.metrics["r_end"] = run.trajectory.states.back().r;
  drift.metrics["truncated"] = run.trajectory.truncated ? 1 : 0;
  if (run.trajectory.truncated) drift.note = "clean truncation: " + run.trajectory.reason;
  run.entries.push_back(drift);

  if (opt.params.lambda < 0) {
    const RadialClosedForm cf = radial_closed_form(opt.params, opt.r0, opt.F0);
    double e = 0;
    for (const auto& s : run.trajectory.states) e = std::max(e, closed_form_error(s, cf));
    run.closed_form_error = e;
    ReportEntry ce = single("ode.closed_form", e, opt.closed_form_tol);
    ce.metrics["E"] = cf.E;
    ce.metrics["k"] = cf.k;
    ce.metrics["rho_star"] = cf.rho_star;
    run.entries.push_back(ce);
  }
  return run;
}

double observed_order(const OdeOptions& opt, double coarse_step) {
  if (!(opt.params.lambda < 0)) throw RadialError("observed order needs the lambda < 0 closed forms");
  const RadialClosedForm cf = radial_closed_form(opt.params, opt.r0, opt.F0);
  RadialInit init;
  init.r0 = opt.r0;
  init.F0 = opt.F0;
  const RadialState s0 = radial_initial(opt.params, init);
  double errs[2];
  for (int i = 0; i < 2; ++i) {
    const RadialTrajectory tr = radial_integrate(s0, opt.params, opt.r1, coarse_step / (1 << i));
    if (tr.truncated) throw RadialError("trajectory truncated: " + tr.reason);
    errs[i] = closed_form_error(tr.states.back(), cf);
  }
  return std::log2(errs[0] / errs[1]);
}

}  // namespace spinform
