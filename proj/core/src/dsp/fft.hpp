// Copyright 2026 The AxialVC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>

namespace axialvc::dsp::detail {

// Real-input FFT of fixed size backed by FFTW. Planning is serialized behind
// a global mutex since the FFTW planner is not reentrant; execution is not.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return n_; }
  // in: n reals; out: n/2 + 1 complex bins.
  void forward(const double* in, std::complex<double>* out);
  // in: n/2 + 1 bins; out: n reals, scaled by 1/n so inverse(forward(x)) == x.
  void inverse(const std::complex<double>* in, double* out);

 private:
  std::size_t n_;
  double* real_;
  fftw_complex* spec_;
  fftw_plan forward_plan_;
  fftw_plan inverse_plan_;
};

}  // namespace axialvc::dsp::detail
