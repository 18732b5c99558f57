// Copyright 2026 fracalc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <mpfr.h>

namespace fracalc::detail {

// Minimal RAII holder for an mpfr_t; engine code uses the mpfr_* C calls
// directly on raw(). Round-to-nearest throughout.
class MpReal {
 public:
  MpReal() = default;
  MpReal(const MpReal&) = delete;
  MpReal& operator=(const MpReal&) = delete;
  ~MpReal() {
    if (init_) mpfr_clear(v_);
  }

  void reset(mpfr_prec_t prec) {
    if (init_) mpfr_clear(v_);
    mpfr_init2(v_, prec);
    init_ = true;
    mpfr_set_zero(v_, 1);
  }

  bool initialized() const { return init_; }
  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

 private:
  mpfr_t v_;
  bool init_ = false;
};

}  // namespace fracalc::detail
