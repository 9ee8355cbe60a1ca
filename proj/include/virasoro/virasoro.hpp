// Copyright 2026 The virasoro authors.
// Licensed under the Apache License, Version 2.0; see LICENSE in the project root.

#pragma once

#include "virasoro/cft_fit.hpp"
#include "virasoro/checkerboard.hpp"
#include "virasoro/circuit.hpp"
#include "virasoro/core/bits.hpp"
#include "virasoro/core/errors.hpp"
#include "virasoro/core/rng.hpp"
#include "virasoro/diagonalize.hpp"
#include "virasoro/direct_prep.hpp"
#include "virasoro/entropy.hpp"
#include "virasoro/io.hpp"
#include "virasoro/krylov.hpp"
#include "virasoro/matvec.hpp"
#include "virasoro/measurement.hpp"
#include "virasoro/models.hpp"
#include "virasoro/noise.hpp"
#include "virasoro/optimize.hpp"
#include "virasoro/pauli.hpp"
#include "virasoro/pec.hpp"
#include "virasoro/pipeline.hpp"
#include "virasoro/postprocess.hpp"
#include "virasoro/statevector.hpp"
#include "virasoro/vqe.hpp"
#include "virasoro/walsh.hpp"
