#pragma once

// Named states and closed-form values, each paired with the value computed
// from the definitions so disagreements show up as data.

#include <array>
#include <string>
#include <vector>

#include "ergent/measures.hpp"
#include "ergent/random.hpp"

namespace ergent::catalog {

PureState ghz(int n);
PureState w(int n);

/// lambda_0|000> + lambda_1 e^{i phi}|100> + lambda_2|101> + lambda_3|110> + lambda_4|111>.
struct SchmidtParams3Q {
    std::array<double, 5> lambda{};
    double phi = 0.0;

    /// |lambda_1 lambda_4 e^{i phi} - lambda_2 lambda_3|^2.
    double alpha() const;
    void validate() const;
};

PureState generalized_schmidt_3q(const SchmidtParams3Q& p);

/// Passive energies of the single-qubit marginals A, B, C under |1><1|.
std::array<double, 3> passive_energies_3q(const SchmidtParams3Q& p);

/// H = |1><1| on every qubit.
LocalHamiltonian unit_qubits(int n);

struct ClosedFormResult {
    double value = 0.0;
    std::string formula_id;
    std::string regime;
    double definition_value = 0.0;
    double discrepancy = 0.0;
};

enum class Table1Class { GenGHZ, TriBell, ExtGHZ };

std::string to_string(Table1Class c);

/// Printed three-qubit closed form with the me_pure cross-check (s = [3],
/// unit qubits). Ties at lambda^2 = 0.5 take the "<=" branch.
ClosedFormResult table1_value(Table1Class cls, const SchmidtParams3Q& p);

/// Formula ids of every Table 1 row, in table order.
const std::vector<std::string>& table1_formula_ids();
Table1Class table1_class_of(const std::string& formula_id);
/// Random parameters strictly inside the regime of `formula_id`.
SchmidtParams3Q sample_table1(const std::string& formula_id, CounterRng& rng);

/// M_E of lambda_0|000> + lambda_3|110> + lambda_4|111>.
double fig1_family_me(double lambda0, double lambda4);

struct Table2Row {
    std::string name;
    PureState state;
    double me = 0.0, dmin = 0.0, davg = 0.0, dfill = 0.0, dvol = 0.0;  // printed values
};

/// The five comparison states; |chi> uses amplitudes (1/2, sqrt(3)/2).
std::vector<Table2Row> table2_rows();

/// (cos|00> + sin|11>)^{x3} regrouped on 8 x 2 x 2 x 2, A holding the first
/// qubit of each pair.
PureState star_state(double theta);
/// |7><7| on A and |1><1| on B, C, D.
LocalHamiltonian star_hamiltonian();
double star_me_definition(double theta);
double star_me_paper(double theta);

PureState psi4(double theta);
PureState phi4(double theta);
double psi4_me(double theta);
double phi4_me_paper(double theta);
/// Fully separable gap of both psi4 and phi4.
double fullsep4(double theta);

enum class SubsetMode { full, n_minus_1 };

struct GhzWForms {
    double ghz = 0.0;
    double w = 0.0;
};

GhzWForms ghz_w_closed_forms(int n, SubsetMode mode);
/// me_pure of GHZ_n and W_n for s = [n] or [n-1] under unit qubits.
GhzWForms ghz_w_direct(int n, SubsetMode mode, Exec exec = Exec::parallel);

SubsetChoice subset_for(int n, SubsetMode mode);

}  // namespace ergent::catalog
