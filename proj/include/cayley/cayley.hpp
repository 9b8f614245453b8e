/// Umbrella header.
#pragma once

#include "cayley/cyclotomic.hpp"
#include "cayley/functional.hpp"
#include "cayley/json_io.hpp"
#include "cayley/numtheory.hpp"
#include "cayley/oracle.hpp"
#include "cayley/paley.hpp"
#include "cayley/parallel.hpp"
#include "cayley/ring.hpp"
#include "cayley/spectra.hpp"
