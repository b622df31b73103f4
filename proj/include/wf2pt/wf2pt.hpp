#pragma once

#include "wf2pt/bench.hpp"
#include "wf2pt/canonical.hpp"
#include "wf2pt/errors.hpp"
#include "wf2pt/experiment.hpp"
#include "wf2pt/generator.hpp"
#include "wf2pt/label.hpp"
#include "wf2pt/language_oracle.hpp"
#include "wf2pt/petri_net.hpp"
#include "wf2pt/pnml.hpp"
#include "wf2pt/process_tree.hpp"
#include "wf2pt/reduction.hpp"
#include "wf2pt/semantics.hpp"
#include "wf2pt/step_log.hpp"
#include "wf2pt/symbolic.hpp"
#include "wf2pt/trace.hpp"
#include "wf2pt/tree_language.hpp"
#include "wf2pt/tree_text.hpp"
#include "wf2pt/tree_to_net.hpp"
#include "wf2pt/workflow.hpp"
