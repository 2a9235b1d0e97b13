#include "sps/degradation.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sps/kernels.hpp"
#include "sps/rng.hpp"

namespace sps {

namespace {
constexpr std::uint64_t kMaskStream = 1;
constexpr std::uint64_t kNoiseStream = 2;

// Dirichlet kernel: DFT of a centered length-b boxcar of weight 1/b.
double dirichlet(int b, int f, int n) {
  if (f == 0) return 1.0;
  const double t = kPi * static_cast<double>(f) / static_cast<double>(n);
  return std::sin(b * t) / (b * std::sin(t));
}
}  // namespace

void validate(const DegradationConfig& cfg) {
  require(cfg.width >= 1 && cfg.height >= 1,
          "degradation: image dimensions must be positive");
  require(cfg.blur_size >= 1 && cfg.blur_size % 2 == 1,
          "degradation: blur size must be a positive odd integer");
  require(cfg.blur_size <= std::min(cfg.width, cfg.height),
          "degradation: blur size exceeds image dimensions");
  require(cfg.keep_prob >= 0.0 && cfg.keep_prob <= 1.0,
          "degradation: keep probability must lie in [0,1]");
  require(cfg.noise_sigma >= 0.0,
          "degradation: noise sigma must be nonnegative");
}

ObservationRecord record_for(const DegradationConfig& cfg, std::int64_t n) {
  require(n >= 0, "degradation: record index must be nonnegative");
  const auto un = static_cast<std::uint64_t>(n);
  return {n, rng::derive(cfg.master_seed, un, kMaskStream),
          rng::derive(cfg.master_seed, un, kNoiseStream)};
}

CVec nominal_blur_response(const DegradationConfig& cfg) {
  validate(cfg);
  CVec response(static_cast<std::size_t>(cfg.width) * cfg.height);
  std::vector<double> dh(cfg.height), dw(cfg.width);
  for (int f = 0; f < cfg.height; ++f) dh[f] = dirichlet(cfg.blur_size, f, cfg.height);
  for (int f = 0; f < cfg.width; ++f) dw[f] = dirichlet(cfg.blur_size, f, cfg.width);
  for (int f1 = 0; f1 < cfg.height; ++f1)
    for (int f2 = 0; f2 < cfg.width; ++f2)
      response[static_cast<std::size_t>(f1) * cfg.width + f2] = dh[f1] * dw[f2];
  return response;
}

FrequencyOperator nominal_blur_operator(const DegradationConfig& cfg) {
  return {cfg.width, cfg.height, nominal_blur_response(cfg)};
}

std::vector<std::uint8_t> sample_mask(const DegradationConfig& cfg,
                                      std::uint64_t mask_seed) {
  validate(cfg);
  const int w = cfg.width, h = cfg.height;
  std::vector<std::uint8_t> keep(static_cast<std::size_t>(w) * h);
  for (int f1 = 0; f1 < h; ++f1) {
    for (int f2 = 0; f2 < w; ++f2) {
      const std::size_t a = static_cast<std::size_t>(f1) * w + f2;
      const std::size_t b =
          static_cast<std::size_t>((h - f1) % h) * w + (w - f2) % w;
      // Mirror pairs share the draw of their canonical (smaller-index) bin;
      // self-conjugate bins are their own canonical.
      const std::uint64_t canonical = std::min(a, b);
      keep[a] = rng::uniform01(mask_seed, canonical) < cfg.keep_prob ? 1 : 0;
    }
  }
  return keep;
}

FrequencyOperator sample_operator(const DegradationConfig& cfg,
                                  std::int64_t n) {
  const ObservationRecord rec = record_for(cfg, n);
  const CVec nominal = nominal_blur_response(cfg);
  const auto keep = sample_mask(cfg, rec.mask_seed);
  CVec response(nominal.size());
  for (std::size_t i = 0; i < nominal.size(); ++i)
    response[i] = keep[i] ? nominal[i] : std::complex<double>(0.0, 0.0);
  return {cfg.width, cfg.height, std::move(response)};
}

Vec sample_noise(const DegradationConfig& cfg, std::uint64_t noise_seed) {
  Vec e;
  kern::gaussian_field(noise_seed, static_cast<std::size_t>(cfg.width) * cfg.height, e);
  kern::scale(e, cfg.noise_sigma);
  return e;
}

Vec materialize_observation(const DegradationConfig& cfg,
                            const Image& reference,
                            const ObservationRecord& rec) {
  validate(cfg);
  require_same_size(reference.size(),
                    static_cast<std::size_t>(cfg.width) * cfg.height,
                    "materialize_observation");
  const CVec nominal = nominal_blur_response(cfg);
  const auto keep = sample_mask(cfg, rec.mask_seed);
  CVec response(nominal.size());
  for (std::size_t i = 0; i < nominal.size(); ++i)
    response[i] = keep[i] ? nominal[i] : std::complex<double>(0.0, 0.0);
  const FrequencyOperator op(cfg.width, cfg.height, std::move(response));
  Vec z = op.apply(reference.pix);
  if (cfg.noise_sigma > 0.0) kern::add(z, sample_noise(cfg, rec.noise_seed));
  return z;
}

std::pair<ObservationRecord, Vec> sample_observation(
    const DegradationConfig& cfg, const Image& reference, std::int64_t n) {
  const ObservationRecord rec = record_for(cfg, n);
  return {rec, materialize_observation(cfg, reference, rec)};
}

namespace {

[[noreturn]] void manifest_fail(const std::string& path, int line,
                                const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_manifest(const std::string& path, const StreamManifest& manifest) {
  validate(manifest.cfg);
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  const auto& c = manifest.cfg;
  out << "width=" << c.width << "\n"
      << "height=" << c.height << "\n"
      << "blurSize=" << c.blur_size << "\n"
      << "keepProb=" << fmt_double(c.keep_prob) << "\n"
      << "noiseSigma=" << fmt_double(c.noise_sigma) << "\n"
      << "masterSeed=" << c.master_seed << "\n"
      << "count=" << manifest.records.size() << "\n";
  for (const auto& r : manifest.records)
    out << r.index << " " << r.mask_seed << " " << r.noise_seed << "\n";
  if (!out) throw std::runtime_error(path + ": short write");
}

StreamManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  StreamManifest m;
  std::int64_t count = -1;
  int line_no = 0;
  std::string line;
  // Header: exactly seven key=value lines.
  const char* expected[] = {"width",      "height",     "blurSize",
                            "keepProb",   "noiseSigma", "masterSeed",
                            "count"};
  for (const char* key : expected) {
    if (!std::getline(in, line)) manifest_fail(path, line_no + 1, "missing header line");
    ++line_no;
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.substr(0, eq) != key)
      manifest_fail(path, line_no, std::string("expected `") + key + "=`");
    const std::string val = line.substr(eq + 1);
    try {
      if (std::string(key) == "width") m.cfg.width = std::stoi(val);
      else if (std::string(key) == "height") m.cfg.height = std::stoi(val);
      else if (std::string(key) == "blurSize") m.cfg.blur_size = std::stoi(val);
      else if (std::string(key) == "keepProb") m.cfg.keep_prob = std::stod(val);
      else if (std::string(key) == "noiseSigma") m.cfg.noise_sigma = std::stod(val);
      else if (std::string(key) == "masterSeed") m.cfg.master_seed = std::stoull(val);
      else count = std::stoll(val);
    } catch (const std::exception&) {
      manifest_fail(path, line_no, "malformed value");
    }
  }
  if (count < 0) manifest_fail(path, line_no, "negative record count");
  m.records.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    if (!std::getline(in, line))
      manifest_fail(path, line_no + 1, "truncated record list");
    ++line_no;
    std::istringstream ls(line);
    ObservationRecord r;
    if (!(ls >> r.index >> r.mask_seed >> r.noise_seed))
      manifest_fail(path, line_no, "malformed record line");
    m.records.push_back(r);
  }
  try {
    validate(m.cfg);
  } catch (const std::exception& e) {
    manifest_fail(path, line_no, e.what());
  }
  return m;
}

}  // namespace sps
