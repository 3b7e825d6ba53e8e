#pragma once

#include "cartier/cogravity.hpp"
#include "cartier/cohomology.hpp"
#include "cartier/compose.hpp"
#include "cartier/coop.hpp"
#include "cartier/deformation.hpp"
#include "cartier/field.hpp"
#include "cartier/fields.hpp"
#include "cartier/fixtures.hpp"
#include "cartier/json_io.hpp"
#include "cartier/matrix.hpp"
#include "cartier/prime_field.hpp"
#include "cartier/random_gen.hpp"
#include "cartier/rational.hpp"
#include "cartier/tensor.hpp"
#include "cartier/verify.hpp"
