#pragma once

#include "achain/constructions.hpp"
#include "achain/extremal_search.hpp"
#include "achain/family_io.hpp"
#include "achain/hypercube.hpp"
#include "achain/lemma_lab.hpp"
#include "achain/littlewood_offord.hpp"
#include "achain/rational.hpp"
