#pragma once

#include "nslife/kernels/cubature.hpp"

namespace nslife::kernels {

void validate_box(const Box& box);
CubatureResult cubature_slab(const Integrand& f, const Box& box, const CubatureOptions& opt, double a,
                             double b);

}  // namespace nslife::kernels
