// special.hpp — Dawson function
#pragma once

namespace mfgs {

// DF(x) = e^{-x²} ∫_0^x e^{u²} du, odd in x.
double dawson(double x);

}  // namespace mfgs
