#pragma once

// Convenience umbrella: the whole library in one include.

#include "wahllab/cli.hpp"
#include "wahllab/curve.hpp"
#include "wahllab/errors.hpp"
#include "wahllab/gauss.hpp"
#include "wahllab/jet.hpp"
#include "wahllab/json_io.hpp"
#include "wahllab/matrix.hpp"
#include "wahllab/modular.hpp"
#include "wahllab/newton.hpp"
#include "wahllab/polynomial.hpp"
#include "wahllab/rational.hpp"
#include "wahllab/schiffer.hpp"
#include "wahllab/threads.hpp"
