#pragma once

#include "ctalg/error.hpp"
#include "ctalg/rational.hpp"
#include "ctalg/monomial.hpp"
#include "ctalg/laurent.hpp"
#include "ctalg/word.hpp"
#include "ctalg/forest.hpp"
#include "ctalg/typea.hpp"
#include "ctalg/ctops.hpp"
#include "ctalg/xi.hpp"
#include "ctalg/dyson.hpp"
#include "ctalg/birkhoff.hpp"
#include "ctalg/io.hpp"
