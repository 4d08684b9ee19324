#include "bogo/harmonic.hpp"

#include <cmath>
#include <numbers>

#include "bogo/errors.hpp"

namespace bogo {

namespace {

constexpr cplx I(0.0, 1.0);

bool same_frequency(double a, double b) { return std::abs(a - b) <= 1e-14 * std::max({1.0, a, b}); }

// int_{t0}^{tf} e^{i d t} dt
cplx exp_integral(double d, double t0, double tf) {
  const double T = tf - t0;
  return std::exp(I * (d * (t0 + 0.5 * T))) * (T * sinc(0.5 * d * T));
}

}  // namespace

double sinc(double x) {
  if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0 + x * x * x * x / 120.0;
  return std::sin(x) / x;
}

double Envelope::operator()(double t) const {
  const double u = t - center;
  switch (kind) {
    case Kind::None:
      return 1.0;
    case Kind::Gaussian:
      return std::exp(-u * u / (2.0 * width * width));
    case Kind::RaisedCosine:
      return std::abs(u) > width ? 0.0 : 0.5 * (1.0 + std::cos(std::numbers::pi * u / width));
  }
  return 1.0;
}

cplx Envelope::transform(double w) const {
  if (!(width > 0.0) && kind != Kind::None) throw UnsupportedSpec("envelope width must be positive");
  cplx shift = std::exp(-I * (w * center));
  switch (kind) {
    case Kind::None:
      throw UnsupportedSpec("an infinite sinusoid has no Fourier transform; attach an envelope");
    case Kind::Gaussian:
      return shift * (width * std::sqrt(2.0 * std::numbers::pi) * std::exp(-0.5 * width * width * w * w));
    case Kind::RaisedCosine: {
      const double T = width, a = std::numbers::pi / width;
      double v = T * sinc(w * T) + 0.5 * T * (sinc((w - a) * T) + sinc((w + a) * T));
      return shift * v;
    }
  }
  return 0.0;
}

HarmonicSum HarmonicSum::sine(double amplitude, double frequency) {
  HarmonicSum h;
  h.add(amplitude, frequency, PhaseForm::Sin);
  return h;
}

HarmonicSum HarmonicSum::cosine(double amplitude, double frequency) {
  HarmonicSum h;
  h.add(amplitude, frequency, PhaseForm::Cos);
  return h;
}

void HarmonicSum::add(cplx amplitude, double frequency, PhaseForm form) {
  if (!std::isfinite(frequency) || frequency < 0.0) throw ArgumentError("harmonic frequency must be finite and >= 0");
  if (form == PhaseForm::Sin && frequency == 0.0) return;
  for (auto& t : terms)
    if (t.form == form && same_frequency(t.frequency, frequency)) {
      t.amplitude += amplitude;
      return;
    }
  terms.push_back({amplitude, frequency, form});
}

HarmonicSum& HarmonicSum::operator+=(const HarmonicSum& other) {
  for (const auto& t : other.terms) add(t.amplitude, t.frequency, t.form);
  if (envelope.kind == Envelope::Kind::None) envelope = other.envelope;
  return *this;
}

HarmonicSum HarmonicSum::scaled(cplx factor) const {
  HarmonicSum h = *this;
  for (auto& t : h.terms) t.amplitude *= factor;
  return h;
}

double HarmonicSum::max_frequency() const {
  double w = 0.0;
  for (const auto& t : terms) w = std::max(w, t.frequency);
  return w;
}

cplx HarmonicSum::operator()(double t) const {
  cplx s = 0.0;
  for (const auto& h : terms)
    s += h.amplitude * (h.form == PhaseForm::Sin ? std::sin(h.frequency * t) : std::cos(h.frequency * t));
  return s * envelope(t);
}

cplx HarmonicSum::component(double frequency, PhaseForm form) const {
  for (const auto& t : terms)
    if (t.form == form && same_frequency(t.frequency, frequency)) return t.amplitude;
  return 0.0;
}

// sin(W t) = (e^{iWt} - e^{-iWt}) / 2i,  cos(W t) = (e^{iWt} + e^{-iWt}) / 2
cplx HarmonicSum::integrate_against(double nu, double t0, double tf) const {
  cplx s = 0.0;
  for (const auto& h : terms) {
    cplx up = exp_integral(h.frequency - nu, t0, tf);
    cplx down = exp_integral(-h.frequency - nu, t0, tf);
    s += h.form == PhaseForm::Sin ? h.amplitude * (up - down) / (2.0 * I) : h.amplitude * (up + down) / 2.0;
  }
  return s;
}

cplx HarmonicSum::transform_against(double nu) const {
  if (terms.empty()) return 0.0;
  cplx s = 0.0;
  for (const auto& h : terms) {
    cplx up = envelope.transform(nu - h.frequency);
    cplx down = envelope.transform(nu + h.frequency);
    s += h.form == PhaseForm::Sin ? h.amplitude * (up - down) / (2.0 * I) : h.amplitude * (up + down) / 2.0;
  }
  return s;
}

}  // namespace bogo
