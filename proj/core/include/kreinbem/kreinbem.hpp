// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_KREINBEM_HPP
#define KREINBEM_KREINBEM_HPP

#include "kreinbem/boundary_ops.hpp"
#include "kreinbem/bvp.hpp"
#include "kreinbem/coupling.hpp"
#include "kreinbem/dense.hpp"
#include "kreinbem/errors.hpp"
#include "kreinbem/format.hpp"
#include "kreinbem/geometry.hpp"
#include "kreinbem/io.hpp"
#include "kreinbem/kernels.hpp"
#include "kreinbem/krein_spectra.hpp"
#include "kreinbem/steklov.hpp"
#include "kreinbem/volume_potential.hpp"

#endif  // KREINBEM_KREINBEM_HPP
