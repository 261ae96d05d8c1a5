#pragma once

#include "gradedpi/rational.hpp"
#include "gradedpi/cyclotomic.hpp"
#include "gradedpi/sparse_poly.hpp"
#include "gradedpi/linalg.hpp"
#include "gradedpi/permutations.hpp"
#include "gradedpi/parallel.hpp"
#include "gradedpi/group.hpp"
#include "gradedpi/algebra.hpp"
#include "gradedpi/radical.hpp"
#include "gradedpi/polynomial.hpp"
#include "gradedpi/evaluate.hpp"
#include "gradedpi/identities.hpp"
#include "gradedpi/kemer.hpp"
#include "gradedpi/audits.hpp"
