#pragma once

#include "qseg/arith.hpp"
#include "qseg/circuit.hpp"
#include "qseg/error.hpp"
#include "qseg/neqr.hpp"
#include "qseg/oracle.hpp"
#include "qseg/pgm.hpp"
#include "qseg/pipeline.hpp"
#include "qseg/qasm.hpp"
#include "qseg/report.hpp"
#include "qseg/shift.hpp"
#include "qseg/state.hpp"
#include "qseg/synth.hpp"
