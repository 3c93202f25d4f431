#include "minktens/cli.hpp"

#include "minktens/bodies.hpp"
#include "minktens/config.hpp"
#include "minktens/crofton.hpp"
#include "minktens/csv.hpp"
#include "minktens/estimators.hpp"
#include "minktens/experiments.hpp"
#include "minktens/ground_truth.hpp"
#include "minktens/mc.hpp"
#include "minktens/parallel.hpp"
#include "minktens/particle.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

namespace minktens::cli {

namespace {

struct OutputTarget {
  std::string path;  // empty = stdout

  void write(const std::string& content, const std::string& subcommand,
             const std::string& configText, std::uint64_t seed) const {
    if (path.empty()) {
      std::cout << content;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file: " + path);
    f << content;
    writeManifestFile(path, subcommand, configText, seed);
  }
};

std::string canonicalConfig(const CLI::App& app) {
  std::ostringstream os;
  os << app.get_name() << "\n";
  for (const auto* opt : app.get_options()) {
    if (opt->get_name() == "--help") continue;
    os << opt->get_name() << "=";
    for (const auto& r : opt->results()) os << r << " ";
    os << "\n";
  }
  return os.str();
}

void tensorRows(CsvWriter& csv, const std::string& label, const SymmetricTensor& t) {
  for (const auto& [key, value] : tensorCsvRows(t)) csv.row({label, key, value});
}

QuadratureSpec parseNodes(const std::string& nodes) {
  const auto comma = nodes.find(',');
  if (comma == std::string::npos) throw ConfigError("--nodes expects D,O");
  return QuadratureSpec(std::stoi(nodes.substr(0, comma)), std::stoi(nodes.substr(comma + 1)));
}

// ---- coeffs ----------------------------------------------------------------

int runCoeffs(int s, int n, const OutputTarget& out, const std::string& cfgText) {
  const CroftonTable t = CroftonTable::build(n, s);
  const MeasurementFunction g(n, s);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, 0);
  csv.header({"table", "row", "col", "value"});
  for (int m = 0; m <= s / 2; ++m)
    for (int k = 0; k <= m; ++k)
      csv.row({"c", std::to_string(m), std::to_string(k), formatReal(t.c[m][k])});
  for (int j = 0; j <= s / 2; ++j)
    csv.row({"C", std::to_string(2 * j), "", formatReal(t.C[j])});
  for (int i = 0; i <= s / 2; ++i)
    for (int j = 0; j <= i; ++j)
      csv.row({"d", std::to_string(i), std::to_string(j), formatReal(t.d[i][j])});
  const auto& coefs = g.termCoefficients();
  for (std::size_t j = 0; j < coefs.size(); ++j)
    csv.row({"g_coef", std::to_string(j), "", formatReal(coefs[j])});
  Vec e1 = Vec::Zero(n);
  e1[0] = 1;
  for (const auto& [key, value] : tensorCsvRows(g(LinearDirection(e1))))
    csv.row({"G_at_e1", key, "", value});
  out.write(os.str(), "coeffs", cfgText, 0);
  return 0;
}

// ---- truth -----------------------------------------------------------------

int runTruth(const std::string& bodyPath, int s, const QuadratureSpec& q, const OutputTarget& out,
             const std::string& cfgText) {
  const ConvexBody k = loadBody(bodyPath);
  const SymmetricTensor t = surfaceTensor(k, s, q);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, 0);
  csv.header({"multiindex", "value"});
  for (const auto& [key, value] : tensorCsvRows(t)) csv.row({key, value});
  out.write(os.str(), "truth", cfgText, 0);
  return 0;
}

// ---- oracle ----------------------------------------------------------------

int runOracle(const std::string& bodyPath, int s, const QuadratureSpec& q, const OutputTarget& out,
              const std::string& cfgText) {
  const ConvexBody k = loadBody(bodyPath);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, 0);
  csv.header({"check", "multiindex", "lhs", "rhs", "abs_gap"});

  const SymmetricTensor lhs = croftonIntegralOracle(k, s, q);
  SymmetricTensor rhs(k.dim(), s);
  if (s % 2 == 0) rhs = croftonCombination(k, s);
  const auto& idx = lhs.multiIndices();
  for (std::size_t f = 0; f < lhs.size(); ++f) {
    std::string key;
    for (std::size_t c = 0; c < idx[f].size(); ++c)
      key += (c ? "-" : "") + std::to_string(idx[f][c] + 1);
    csv.row({"linear", key, formatReal(lhs[f]), formatReal(rhs[f]),
             formatReal(std::abs(lhs[f] - rhs[f]))});
  }
  csv.row({"linear_max_gap", "", "", "", formatReal(maxAbsDiff(lhs, rhs))});

  if (s % 2 == 0) {
    const SymmetricTensor inv = inverseCroftonOracle(k, s, q);
    const SymmetricTensor truth = surfaceTensor(k, s);
    for (std::size_t f = 0; f < inv.size(); ++f) {
      std::string key;
      for (std::size_t c = 0; c < idx[f].size(); ++c)
        key += (c ? "-" : "") + std::to_string(idx[f][c] + 1);
      csv.row({"inverse", key, formatReal(inv[f]), formatReal(truth[f]),
               formatReal(std::abs(inv[f] - truth[f]))});
    }
    csv.row({"inverse_max_gap", "", "", "", formatReal(maxAbsDiff(inv, truth))});
  }
  out.write(os.str(), "oracle", cfgText, 0);
  return 0;
}

// ---- estimate --------------------------------------------------------------

struct EstimateOptions {
  std::string bodyPath;
  std::string design = "iur";
  int s = 2;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  int lines = 1;
  std::string frame = "iid";  // proj: iid | orthogonal
  Real refRadius = 0;         // 0 = auto
  std::string axis = "0 0 1";
  std::string component = "11";
  std::string density = "fstar";
  std::string measure = "hit";  // vert: hit | width
};

int runEstimate(const EstimateOptions& opt, const OutputTarget& out, const std::string& cfgText) {
  const ConvexBody k = loadBody(opt.bodyPath);
  const int n = k.dim();
  if (opt.s % 2 != 0) throw ConfigError("--s must be even");
  if (opt.reps < 2) throw ConfigError("--reps must be at least 2");
  const Real autoRadius = 1.25 * boundRadiusFromOrigin(k);
  const Real radius = opt.refRadius > 0 ? opt.refRadius : autoRadius;

  const SymmetricTensor truth = surfaceTensor(k, opt.s);
  const MeasurementFunction g(n, opt.s);
  McSummary summary;
  bool scalarRun = false;
  int compI = 0, compJ = 0;

  if (opt.design == "iur") {
    const ReferenceSet a{ConvexBody(Ball{Vec::Zero(n), radius})};
    a.requireContains(k);
    summary = mcRunTensor(
        [&](RngStream& rng) { return estHitMiss(k, a, sampleIurLine(a, rng), g); }, n, opt.s,
        opt.reps, opt.seed);
  } else if (opt.design == "proj") {
    const bool orthogonal = opt.frame == "orthogonal";
    if (!orthogonal && opt.frame != "iid") throw ConfigError("--frame must be iid or orthogonal");
    summary = mcRunTensor(
        [&](RngStream& rng) {
          std::vector<LinearDirection> dirs;
          if (orthogonal) {
            dirs = orthogonalFrame(n, rng);
          } else {
            for (int i = 0; i < opt.lines; ++i) dirs.push_back(isotropicDirection(n, rng));
          }
          return estProjection(k, dirs, g);
        },
        n, opt.s, opt.reps, opt.seed);
  } else if (opt.design == "syst") {
    if (n != 2 || opt.s != 2) throw ConfigError("systematic design is planar, s = 2");
    if (opt.lines < 1) throw ConfigError("--lines must be positive");
    summary = mcRunTensor(
        [&](RngStream& rng) {
          return systematicEstimator2d(k, opt.lines, rng.uniform(0.0, M_PI / opt.lines), g);
        },
        n, opt.s, opt.reps, opt.seed);
  } else if (opt.design == "vert") {
    if (n != 3) throw ConfigError("vertical design needs a 3-dimensional body");
    const auto axisToks = detail::splitWs(opt.axis);
    if (axisToks.size() != 3) throw ConfigError("--axis expects three numbers");
    Vec axisVec(3);
    for (int i = 0; i < 3; ++i) axisVec[i] = parseNumber(axisToks[static_cast<std::size_t>(i)]);
    ReferenceSet a{ConvexBody(Ball{Vec::Zero(3), radius})};
    a.requireContains(k);
    const VerticalDesign design(std::move(a), LinearDirection(axisVec), opt.s);
    const bool widthMeasure = opt.measure == "width";
    if (!widthMeasure && opt.measure != "hit") throw ConfigError("--measure must be hit or width");
    summary = mcRunTensor(
        [&](RngStream& rng) {
          return widthMeasure ? design.drawWidth(k, rng) : design.drawHitMiss(k, rng);
        },
        n, opt.s, opt.reps, opt.seed);
  } else if (opt.design == "weighted") {
    if (n != 2 || opt.s != 2) throw ConfigError("weighted design is planar, s = 2");
    if (opt.component.size() != 2) throw ConfigError("--component expects e.g. 11, 12, 22");
    compI = opt.component[0] - '1';
    compJ = opt.component[1] - '1';
    if (compI < 0 || compI > 1 || compJ < 0 || compJ > 1)
      throw ConfigError("--component entries must be 1 or 2");
    const ReferenceSet a{ConvexBody(Ball{Vec::Zero(2), radius})};
    a.requireContains(k);
    DirectionDensity f = [&] {
      if (opt.density == "uniform")
        return DirectionDensity::fromWeight([](Real) { return 1.0; });
      if (opt.density == "fstar") return fstarDensity(compI, compJ);
      if (opt.density == "fstar-body") return fstarBodyDensity(compI, compJ, k, radius);
      throw ConfigError("--density must be uniform, fstar or fstar-body");
    }();
    summary = mcRunScalar(
        [&](RngStream& rng) { return estWeighted(k, radius, compI, compJ, f, rng); }, opt.reps,
        opt.seed);
    scalarRun = true;
  } else {
    throw ConfigError("--design must be one of iur, proj, syst, vert, weighted");
  }

  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, opt.seed);
  if (!std::isnan(summary.posdefFraction))
    csv.comment("posdef_fraction=" + formatReal(summary.posdefFraction));
  csv.header({"component", "mean", "variance", "cv", "se_mean", "truth", "abs_z"});
  auto zRow = [&](const std::string& key, std::size_t f, Real truthVal) {
    const Real se = summary.seMean[static_cast<Eigen::Index>(f)];
    const Real z = se > 0 ? std::abs(summary.mean[static_cast<Eigen::Index>(f)] - truthVal) / se
                          : std::abs(summary.mean[static_cast<Eigen::Index>(f)] - truthVal);
    csv.row({key, formatReal(summary.mean[static_cast<Eigen::Index>(f)]),
             formatReal(summary.variance[static_cast<Eigen::Index>(f)]),
             formatReal(summary.cv[static_cast<Eigen::Index>(f)]),
             formatReal(se), formatReal(truthVal), formatReal(z)});
  };
  if (scalarRun) {
    zRow(opt.component, 0, truth.coeff({compI, compJ}));
  } else {
    const auto& idx = truth.multiIndices();
    for (std::size_t f = 0; f < truth.size(); ++f) {
      std::string key;
      for (std::size_t c = 0; c < idx[f].size(); ++c)
        key += (c ? "-" : "") + std::to_string(idx[f][c] + 1);
      zRow(key, f, truth[f]);
    }
  }
  out.write(os.str(), "estimate", cfgText, opt.seed);
  return 0;
}

// ---- figures / curves --------------------------------------------------------

void writeGnuplotScript(const std::string& csvPath, const std::string& whichFigure) {
  if (csvPath.empty()) return;
  std::ofstream gp(csvPath + ".gp");
  if (!gp) return;
  gp << "# gnuplot script (generated; not executed by the tool)\n";
  gp << "set datafile separator ','\n";
  gp << "set key outside\n";
  if (whichFigure == "figure1") {
    gp << "set xlabel 'number of systematic lines N'\n";
    gp << "set ylabel 'P(estimator positive definite)'\n";
    gp << "plot for [b=1:3] '" << csvPath
       << "' using 2:($1==b?$3:1/0) with linespoints title sprintf('K%d', b)\n";
  } else if (whichFigure == "curves") {
    gp << "set xlabel 'gamma'\n";
    gp << "plot '" << csvPath << "' using 1:2 with lines title 'P_IUR', '' using 1:3 with lines "
          "title 'P_fstar', '' using 1:4 with lines title 'P_opt', '' using 1:5 with lines title "
          "'Q_IUR', '' using 1:6 with lines title 'Q_fstar', '' using 1:7 with lines title 'Q_opt'\n";
  } else {
    gp << "set xlabel 'l'\n";
    gp << "set ylabel 'CV'\n";
    gp << "plot '" << csvPath << "' using 1:5 title 'hit 1', '' using 1:6 title 'hit 3', '' using "
          "1:7 title 'proj 1', '' using 1:8 title 'proj 3'\n";
  }
}

int runFigure1(Real eps, int grid, int maxLines, const OutputTarget& out,
               const std::string& cfgText) {
  const auto study = systematicPosdefStudy(eps, grid, maxLines);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, 0);
  csv.header({"body", "n_lines", "posdef_probability"});
  for (const auto& p : study)
    csv.row({std::to_string(p.body), std::to_string(p.nLines), formatReal(p.probability)});
  out.write(os.str(), "figure1", cfgText, 0);
  writeGnuplotScript(out.path, "figure1");
  return 0;
}

int runFigure2(std::size_t reps, std::uint64_t seed, int lMax, const OutputTarget& out,
               const std::string& cfgText) {
  const auto rows = spheroidStudy(reps, seed, 0, lMax);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, seed);
  csv.header({"l", "i", "j", "truth", "cv_hit1", "cv_hit3", "cv_proj1", "cv_proj3", "var_proj3",
              "hit_probability"});
  for (const auto& r : rows)
    csv.row({std::to_string(r.l), std::to_string(r.i), std::to_string(r.j), formatReal(r.truth),
             formatReal(r.cvHit1), formatReal(r.cvHit3), formatReal(r.cvProj1),
             formatReal(r.cvProj3), formatReal(r.varProj3), formatReal(r.hitProbability)});
  out.write(os.str(), "figure2", cfgText, seed);
  writeGnuplotScript(out.path, "figure2");
  return 0;
}

int runCurves(int grid, const OutputTarget& out, const std::string& cfgText) {
  const auto rows = varianceCurveGrid(grid);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, 0);
  csv.header({"gamma", "p_iur", "p_fstar", "p_opt", "q_iur", "q_fstar", "q_opt"});
  for (const auto& r : rows)
    csv.row({formatReal(r.gamma), formatReal(r.pIur), formatReal(r.pFstar), formatReal(r.pOpt),
             formatReal(r.qIur), formatReal(r.qFstar), formatReal(r.qOpt)});
  out.write(os.str(), "curves", cfgText, 0);
  writeGnuplotScript(out.path, "curves");
  return 0;
}

// ---- process -----------------------------------------------------------------

GrainSampler loadGrain(const std::string& path) {
  const auto kv = parseKeyValueFile(path);
  auto need = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(std::string("grain config: missing key '") + key + "'");
    return it->second;
  };
  auto allowOnly = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const char* a : keys)
        if (k == a) ok = true;
      if (!ok) throw ConfigError("grain config: unknown key '" + k + "'");
    }
  };
  const std::string kind = need("kind");
  if (kind == "disk") {
    allowOnly({"kind", "radius"});
    return GrainSampler::fixedBody(ConvexBody(Ball{Vec::Zero(2), parseNumber(need("radius"))}));
  }
  if (kind == "random-disk") {
    allowOnly({"kind", "radius_min", "radius_max"});
    return GrainSampler::randomRadiusDisk(parseNumber(need("radius_min")),
                                          parseNumber(need("radius_max")));
  }
  if (kind == "rotated-ellipse") {
    allowOnly({"kind", "semi_axes"});
    const auto toks = detail::splitWs(need("semi_axes"));
    if (toks.size() != 2) throw ConfigError("grain config: semi_axes expects two numbers");
    return GrainSampler::rotatedEllipse(parseNumber(toks[0]), parseNumber(toks[1]));
  }
  if (kind == "rotated-spheroid") {
    allowOnly({"kind", "semi_axes"});
    const auto toks = detail::splitWs(need("semi_axes"));
    if (toks.size() != 2) throw ConfigError("grain config: semi_axes expects two numbers");
    return GrainSampler::rotatedSpheroid(parseNumber(toks[0]), parseNumber(toks[1]));
  }
  throw ConfigError("grain config: unknown kind '" + kind + "'");
}

int runProcess(Real gamma, const std::string& grainPath, Real window, int s, int lines, Real segLen,
               std::size_t reps, std::uint64_t seed, const std::string& design,
               const OutputTarget& out, const std::string& cfgText) {
  if (s % 2 != 0) throw ConfigError("--s must be even");
  const GrainSampler grain = loadGrain(grainPath);
  const int n = grain.dim();
  Vec lo = Vec::Zero(n), hi = Vec::Zero(n);
  for (int i = 0; i < n; ++i) {
    lo[i] = -0.5 * window;
    hi[i] = 0.5 * window;
  }
  const ParticleProcessModel model(gamma, grain, lo, hi);
  if (segLen > window) throw ConfigError("--seglen must fit inside the window");

  const bool systematic = design == "syst";
  if (!systematic && design != "iid") throw ConfigError("--design must be iid or syst");
  if (systematic && n != 2) throw ConfigError("systematic directions are planar");

  const auto summary = mcRunVector(
      [&](RngStream& rng, bool&) {
        const auto particles = simulateParticles(model, rng);
        std::vector<LinearDirection> dirs;
        if (systematic) {
          dirs = systematicDirections2d(lines, rng.uniform(0.0, M_PI / lines));
        } else {
          dirs = isotropicDirections(n, lines, rng);
        }
        const auto est = specificTensorEstimate(particles, model, dirs, segLen, s);
        Eigen::VectorXd x(static_cast<Eigen::Index>(est.tensor.size()));
        for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = est.tensor[static_cast<std::size_t>(i)];
        return x;
      },
      static_cast<Eigen::Index>(SymmetricTensor(n, s).size()), reps, seed);

  const SymmetricTensor truth = specificTensorTruth(model, s, 20000, seed ^ 0x7247ULL);
  std::ostringstream os;
  CsvWriter csv(os);
  csv.manifest(cfgText, seed);
  csv.header({"component", "mean", "variance", "se_mean", "truth", "abs_z"});
  const auto& idx = truth.multiIndices();
  for (std::size_t f = 0; f < truth.size(); ++f) {
    std::string key;
    for (std::size_t c = 0; c < idx[f].size(); ++c)
      key += (c ? "-" : "") + std::to_string(idx[f][c] + 1);
    const Real se = summary.seMean[static_cast<Eigen::Index>(f)];
    const Real diff = std::abs(summary.mean[static_cast<Eigen::Index>(f)] - truth[f]);
    csv.row({key, formatReal(summary.mean[static_cast<Eigen::Index>(f)]),
             formatReal(summary.variance[static_cast<Eigen::Index>(f)]), formatReal(se),
             formatReal(truth[f]), formatReal(se > 0 ? diff / se : diff)});
  }
  out.write(os.str(), "process", cfgText, seed);
  return 0;
}

// ---- selfcheck ----------------------------------------------------------------

int runSelfcheck(bool quick) {
  int failures = 0;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  check("c00 = 2", std::abs(cCoeff(0, 0) - 2.0) < 1e-12);
  check("c11 = 8 pi", std::abs(cCoeff(1, 1) - 8.0 * M_PI) < 1e-11);
  check("c22 = -64 pi^2 / 3", std::abs(cCoeff(2, 2) + 64.0 * M_PI * M_PI / 3.0) < 1e-10);
  {
    bool ok = true;
    for (int s = 0; s <= 20; s += 2) ok = ok && CroftonTable::build(3, s).dcIdentityError() <= 1e-10;
    check("D C = I for s <= 20", ok);
    const auto t = CroftonTable::build(2, 4);
    check("d22 = -3/(64 pi^2)", std::abs(t.d[2][2] + 3.0 / (64.0 * M_PI * M_PI)) < 1e-15);
  }
  {
    bool ok = true;
    const int top = quick ? 12 : 30;
    for (int n = 0; n <= top && ok; ++n)
      for (int m = 0; m <= n && ok; ++m) ok = binomialHalfIntegerIdentityResidual(n, m) == 0;
    check("binomial identity exact", ok);
    ok = true;
    for (int m = 0; m <= 30; ++m) ok = ok && alternatingBinomialSumResidual(m) <= 1e-10;
    check("alternating binomial sum", ok);
  }
  {
    bool ok = true;
    for (int n = 2; n <= 3; ++n) {
      RngStream rng(7, static_cast<std::uint64_t>(n));
      const LinearDirection u = isotropicDirection(n, rng);
      const SymmetricTensor t = static_cast<Real>(n + 1) * lineMetric(u) - metricTensor(n);
      const Vec ev = rank2Spectrum(t);
      for (int i = 0; i < n - 1; ++i) ok = ok && std::abs(ev[i] + 1.0) < 1e-12;
      ok = ok && std::abs(ev[n - 1] - n) < 1e-12;
    }
    check("spectrum((n+1)Q(L)-Q) = {n, -1...}", ok);
  }
  {
    const QuadratureSpec q(quick ? 256 : 512, quick ? 64 : 128);
    const ConvexBody disk(Ball{Vec::Zero(2), 1.0});
    const ConvexBody square(Polygon{{makeVec({0, 0}), makeVec({1, 0}), makeVec({1, 1}),
                                     makeVec({0, 1})}});
    bool ok = true;
    for (const auto& body : {disk, square}) {
      for (int s = 0; s <= 2; s += 2) {
        const auto lhs = croftonIntegralOracle(body, s, q);
        const auto rhs = croftonCombination(body, s);
        ok = ok && maxAbsDiff(lhs, rhs) <= 2e-3 * std::max<Real>(1.0, maxAbs(rhs));
        const auto inv = inverseCroftonOracle(body, s, q);
        const auto truth = surfaceTensor(body, s);
        ok = ok && maxAbsDiff(inv, truth) <= 2e-3 * std::max<Real>(1.0, maxAbs(truth));
      }
    }
    check("Crofton oracles on disk and square", ok);
  }
  {
    bool ok = true;
    for (int i = 0; i < 64; ++i) {
      const Real gamma = (i + 0.5) * M_PI / 64;
      for (const auto kind :
           {CurveKind::PIur, CurveKind::PFstar, CurveKind::QIur, CurveKind::QFstar}) {
        ok = ok && std::abs(varianceCurve(kind, gamma) -
                            varianceCurveDefiningIntegral(kind, gamma)) <= 1e-8;
      }
    }
    const Real qfMin = 3.0 / (32 * M_PI * M_PI) * (std::sqrt(2.0) - 0.5);
    ok = ok && std::abs(varianceCurve(CurveKind::QFstar, 0.25 * M_PI) - qfMin) < 1e-10;
    ok = ok && std::abs(varianceCurve(CurveKind::QIur, 0.25 * M_PI) - 21.0 / (640 * M_PI)) < 1e-10;
    check("variance curves", ok);
  }
  {
    const Real kap = std::acos(1.0 / std::sqrt(3.0));
    const Real mClosed = (std::sqrt(2.0) + kap) / (4.0 * M_PI) - 1.0 / 16.0;
    bool ok = std::abs(fstarNormalizer(0, 0) - mClosed) < 1e-12;
    ok = ok && std::abs(fstarNormalizer(0, 1) - 3.0 / (8.0 * M_PI)) < 1e-12;
    check("f* normalizers", ok);
  }
  std::cout << (failures == 0 ? "selfcheck passed" : "selfcheck FAILED") << "\n";
  return failures == 0 ? 0 : 3;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"surface-tensor estimation from line sections"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker count (default: MINKTENS_THREADS or hardware)");

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "dump Crofton coefficient tables");
  int cS = 4, cN = 2;
  std::string cOut;
  coeffs->add_option("--s", cS, "even tensor rank")->check(CLI::NonNegativeNumber);
  coeffs->add_option("--n", cN, "space dimension")->check(CLI::PositiveNumber);
  coeffs->add_option("--out", cOut, "output CSV path (default stdout)");
  coeffs->set_config("--config");

  // truth
  auto* truth = app.add_subcommand("truth", "ground-truth surface tensor of a body");
  std::string tBody, tOut, tNodes = "512,64";
  int tS = 2;
  truth->add_option("--body", tBody, "body config file")->required();
  truth->add_option("--s", tS, "tensor rank");
  truth->add_option("--nodes", tNodes, "direction,offset node counts");
  truth->add_option("--out", tOut, "output CSV path");
  truth->set_config("--config");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force Crofton integrals vs tensor combinations");
  std::string oBody, oOut, oNodes = "2048,512";
  int oS = 2;
  oracle->add_option("--body", oBody, "body config file")->required();
  oracle->add_option("--s", oS, "tensor rank");
  oracle->add_option("--nodes", oNodes, "direction,offset node counts");
  oracle->add_option("--out", oOut, "output CSV path");
  oracle->set_config("--config");

  // estimate
  auto* est = app.add_subcommand("estimate", "Monte-Carlo estimator run");
  EstimateOptions eo;
  std::string eOut;
  est->add_option("--body", eo.bodyPath, "body config file")->required();
  est->add_option("--design", eo.design, "iur | proj | syst | vert | weighted");
  est->add_option("--s", eo.s, "even tensor rank");
  est->add_option("--reps", eo.reps, "replications");
  est->add_option("--seed", eo.seed, "RNG seed");
  est->add_option("--lines", eo.lines, "lines per replication (proj/syst)");
  est->add_option("--frame", eo.frame, "proj design: iid | orthogonal");
  est->add_option("--ref-radius", eo.refRadius, "reference ball radius (0 = auto)");
  est->add_option("--axis", eo.axis, "vertical axis, e.g. '0 0 1'");
  est->add_option("--component", eo.component, "weighted design component: 11 | 12 | 22");
  est->add_option("--density", eo.density, "weighted design: uniform | fstar | fstar-body");
  est->add_option("--measure", eo.measure, "vertical design: hit | width");
  est->add_option("--out", eOut, "output CSV path");
  est->set_config("--config");

  // figure1
  auto* fig1 = app.add_subcommand("figure1", "posdef probability of the systematic design");
  Real f1Eps = 0.1;
  int f1Grid = 500, f1Max = 10;
  std::string f1Out;
  fig1->add_option("--eps", f1Eps, "body eccentricity parameter");
  fig1->add_option("--grid", f1Grid, "phi0 grid size")->check(CLI::PositiveNumber);
  fig1->add_option("--max-lines", f1Max, "largest N");
  fig1->add_option("--out", f1Out, "output CSV path");
  fig1->set_config("--config");

  // figure2
  auto* fig2 = app.add_subcommand("figure2", "spheroid CV comparison of the four estimators");
  std::size_t f2Reps = 100000;
  std::uint64_t f2Seed = 1;
  int f2LMax = 5;
  std::string f2Out;
  fig2->add_option("--reps", f2Reps, "replications per estimator");
  fig2->add_option("--seed", f2Seed, "RNG seed");
  fig2->add_option("--lmax", f2LMax, "largest axis ratio");
  fig2->add_option("--out", f2Out, "output CSV path");
  fig2->set_config("--config");

  // curves
  auto* curves = app.add_subcommand("curves", "variance comparison curves");
  int cvGrid = 512;
  std::string cvOut;
  curves->add_option("--grid", cvGrid, "gamma grid size")->check(CLI::PositiveNumber);
  curves->add_option("--out", cvOut, "output CSV path");
  curves->set_config("--config");

  // process
  auto* proc = app.add_subcommand("process", "stationary particle process estimation");
  Real pGamma = 10, pWindow = 2, pSegLen = 1;
  std::string pGrain, pOut, pDesign = "iid";
  int pS = 2, pLines = 8;
  std::size_t pReps = 1000;
  std::uint64_t pSeed = 1;
  proc->add_option("--gamma", pGamma, "intensity")->check(CLI::PositiveNumber);
  proc->add_option("--grain", pGrain, "grain config file")->required();
  proc->add_option("--window", pWindow, "window side length")->check(CLI::PositiveNumber);
  proc->add_option("--s", pS, "even tensor rank");
  proc->add_option("--lines", pLines, "directions per realization")->check(CLI::PositiveNumber);
  proc->add_option("--seglen", pSegLen, "test segment length")->check(CLI::PositiveNumber);
  proc->add_option("--reps", pReps, "realizations");
  proc->add_option("--seed", pSeed, "RNG seed");
  proc->add_option("--design", pDesign, "direction design: iid | syst");
  proc->add_option("--out", pOut, "output CSV path");
  proc->set_config("--config");

  // selfcheck
  auto* self = app.add_subcommand("selfcheck", "run the numerical contract suite");
  bool selfQuick = false;
  self->add_flag("--quick", selfQuick, "smaller node counts");

  for (auto* sub : {coeffs, truth, oracle, est, fig1, fig2, curves, proc})
    sub->allow_config_extras(CLI::config_extras_mode::error);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (threads > 0) setGlobalThreads(threads);

  try {
    if (coeffs->parsed()) {
      if (cS % 2 != 0) throw ConfigError("--s must be even");
      return runCoeffs(cS, cN, OutputTarget{cOut}, canonicalConfig(*coeffs));
    }
    if (truth->parsed())
      return runTruth(tBody, tS, parseNodes(tNodes), OutputTarget{tOut}, canonicalConfig(*truth));
    if (oracle->parsed())
      return runOracle(oBody, oS, parseNodes(oNodes), OutputTarget{oOut}, canonicalConfig(*oracle));
    if (est->parsed()) return runEstimate(eo, OutputTarget{eOut}, canonicalConfig(*est));
    if (fig1->parsed())
      return runFigure1(f1Eps, f1Grid, f1Max, OutputTarget{f1Out}, canonicalConfig(*fig1));
    if (fig2->parsed())
      return runFigure2(f2Reps, f2Seed, f2LMax, OutputTarget{f2Out}, canonicalConfig(*fig2));
    if (curves->parsed()) return runCurves(cvGrid, OutputTarget{cvOut}, canonicalConfig(*curves));
    if (proc->parsed())
      return runProcess(pGamma, pGrain, pWindow, pS, pLines, pSegLen, pReps, pSeed, pDesign,
                        OutputTarget{pOut}, canonicalConfig(*proc));
    if (self->parsed()) return runSelfcheck(selfQuick);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace minktens::cli
