#pragma once

#include "chordlab/rational.hpp"
#include "chordlab/cyclic_tuple.hpp"
#include "chordlab/diagram.hpp"
#include "chordlab/boundary.hpp"
#include "chordlab/enumerator.hpp"
#include "chordlab/series.hpp"
#include "chordlab/cutjoin.hpp"
#include "chordlab/lemma_check.hpp"
#include "chordlab/json_io.hpp"
