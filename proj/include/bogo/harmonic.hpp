#pragma once

#include <complex>
#include <vector>

namespace bogo {

using cplx = std::complex<double>;

enum class PhaseForm { Sin, Cos };

struct Harmonic {
  cplx amplitude;
  double frequency = 0.0;
  PhaseForm form = PhaseForm::Sin;
};

// Integrable window multiplying a whole HarmonicSum. None means an infinite sinusoid.
struct Envelope {
  enum class Kind { None, Gaussian, RaisedCosine };
  Kind kind = Kind::None;
  double width = 0.0;  // sigma for Gaussian, half-support for raised cosine
  double center = 0.0;

  double operator()(double t) const;
  // int env(t) e^{-i w t} dt over the real line
  cplx transform(double w) const;
};

class HarmonicSum {
 public:
  std::vector<Harmonic> terms;
  Envelope envelope;

  static HarmonicSum sine(double amplitude, double frequency);
  static HarmonicSum cosine(double amplitude, double frequency);

  // Merges into an existing (frequency, form) term.
  void add(cplx amplitude, double frequency, PhaseForm form);
  HarmonicSum& operator+=(const HarmonicSum& other);
  HarmonicSum scaled(cplx factor) const;
  bool empty() const { return terms.empty(); }
  double max_frequency() const;

  cplx operator()(double t) const;
  // Amplitude of one (frequency, form) component, zero if absent.
  cplx component(double frequency, PhaseForm form) const;

  // int_{t0}^{tf} e^{-i nu t} h(t) dt, exact; the envelope is ignored.
  cplx integrate_against(double nu, double t0, double tf) const;
  // int e^{-i nu t} env(t) h(t) dt over the real line; needs an envelope.
  cplx transform_against(double nu) const;
};

// sin(x)/x with the removable point filled in.
double sinc(double x);

}  // namespace bogo
