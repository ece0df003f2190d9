#pragma once

#include "bnf/coefficient.hpp"
#include "bnf/enumeration.hpp"
#include "bnf/errors.hpp"
#include "bnf/evaluator.hpp"
#include "bnf/hamiltonian.hpp"
#include "bnf/json.hpp"
#include "bnf/oracle.hpp"
#include "bnf/trees.hpp"
