// Includes every public header so the library is compiled as part of the build.
#include "vos/arith.hpp"
#include "vos/census.hpp"
#include "vos/cli.hpp"
#include "vos/codes.hpp"
#include "vos/errors.hpp"
#include "vos/gf2poly.hpp"
#include "vos/parallel.hpp"
#include "vos/primes.hpp"
#include "vos/sequences.hpp"
#include "vos/tableaux.hpp"
