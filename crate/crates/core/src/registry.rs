//! The built-in identity registry.
//!
//! Identities are stored as expression-language text in the same shorthand
//! they are usually written in (theta shorthands, not pre-expanded
//! products), so each entry can be audited at a glance. Custom identities
//! can be ingested from JSON with the same schema.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A machine-readable identity: name, two expression sources, and the
/// verification defaults.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentitySpec {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub default_order: i64,
    /// Smallest cyclotomic order the identity needs; must divide the
    /// configured K.
    pub cyclotomic_order: u32,
    pub tags: Vec<String>,
    /// Level N for rigorous-bound mode, when the identity is a pure
    /// eta/theta-quotient statement on Gamma_1(N).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valence_group: Option<u32>,
}

fn entry(
    name: &str,
    lhs: &str,
    rhs: &str,
    default_order: i64,
    cyclotomic_order: u32,
    tags: &[&str],
) -> IdentitySpec {
    IdentitySpec {
        name: name.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        default_order,
        cyclotomic_order,
        tags: tags.iter().map(|t| t.to_string()).collect(),
        valence_group: None,
    }
}

fn valence(mut spec: IdentitySpec, level: u32) -> IdentitySpec {
    spec.valence_group = Some(level);
    spec
}

/// Parse an identity-ingestion JSON document: an array of `IdentitySpec`
/// objects. Unknown fields are rejected.
pub fn load_identities(json: &str) -> Result<Vec<IdentitySpec>> {
    serde_json::from_str::<Vec<IdentitySpec>>(json).map_err(|e| Error::Ingest(e.to_string()))
}

/// The full built-in registry, in the order reports are emitted.
pub fn builtin_registry() -> Vec<IdentitySpec> {
    let mut reg: Vec<IdentitySpec> = Vec::with_capacity(90);

    // ------------------------------------------------------------------
    // The six tenth-order identities
    // ------------------------------------------------------------------
    reg.push(entry(
        "tenth-1",
        "q^2*phi10(q^9) - (psi10(w*q) - psi10(w^2*q))/(w - w^2)",
        "-q*(T(1,2)/T(3,6))*(T(3,15)*E(6)/E(3))",
        100,
        12,
        &["tenth"],
    ));
    reg.push(entry(
        "tenth-2",
        "q^-2*psi10(q^9) + (w*phi10(w*q) - w^2*phi10(w^2*q))/(w - w^2)",
        "(T(1,2)/T(3,6))*(T(6,15)*E(6)/E(3))",
        100,
        12,
        &["tenth"],
    ));
    reg.push(entry(
        "tenth-3",
        "X10(q^9) - (w*chi10(w*q) - w^2*chi10(w^2*q))/(w - w^2)",
        "(Tb(1,4)/Tb(3,12))*(T(18,30)*E(3)/E(6))",
        100,
        12,
        &["tenth"],
    ));
    reg.push(entry(
        "tenth-4",
        "chi10(q^9) + q^2*(X10(w*q) - X10(w^2*q))/(w - w^2)",
        "-q^3*(Tb(1,4)/Tb(3,12))*(T(6,30)*E(3)/E(6))",
        100,
        12,
        &["tenth"],
    ));
    reg.push(entry(
        "tenth-5",
        "phi10(q) - q^-1*psi10(-q^4) + q^-2*chi10(q^8)",
        "Tb(1,2)*theta(-q^2; -q^10)/T(2,8)",
        100,
        2,
        &["tenth"],
    ));
    reg.push(entry(
        "tenth-6",
        "psi10(q) + q*phi10(-q^4) + X10(q^8)",
        "Tb(1,2)*theta(-q^6; -q^10)/T(2,8)",
        100,
        2,
        &["tenth"],
    ));

    // ------------------------------------------------------------------
    // The two classical sixth-order identities
    // ------------------------------------------------------------------
    reg.push(entry(
        "sixth-A",
        "phi6(q^9) - psi6(q) - q^-3*psi6(q^9)",
        "Tb(3,12)*E(6)^2/(Tb(1,4)*Tb(9,36))",
        120,
        2,
        &["sixth"],
    ));
    reg.push(entry(
        "sixth-B",
        "(psi6(w*q) - psi6(w^2*q))/((w - w^2)*q)",
        "Tb(1,4)*Tb(9,36)*T(3,6)/(Tb(3,12)*E(6))",
        120,
        12,
        &["sixth"],
    ));

    // ------------------------------------------------------------------
    // The three new sixth-order identities
    // ------------------------------------------------------------------
    reg.push(entry(
        "new-sixth-1",
        "q*rho6(q) + q^3*rho6(q^9) - 2*sigma6(q^9)",
        "q*T(3,6)*E(3)^2/(T(1,2)*T(9,18))",
        120,
        2,
        &["new-sixth"],
    ));
    reg.push(entry(
        "new-sixth-2",
        "q*lambda6(q) + q^3*lambda6(q^9) - 2*mu6(q^9)",
        "-T(3,6)*E(6)^2/(Tb(1,4)*Tb(9,36))",
        120,
        2,
        &["new-sixth"],
    ));
    reg.push(entry(
        "new-sixth-3",
        "psibar6(q) + q^-3*psibar6(q^9) - phibar6(q^9)",
        "q*Tb(3,12)*E(3)^2/(T(1,2)*T(9,18))",
        120,
        2,
        &["new-sixth"],
    ));

    // ------------------------------------------------------------------
    // Nineteen second/sixth/eighth-order identities
    // ------------------------------------------------------------------
    reg.push(entry(
        "thm-B-1",
        "q*B2(q) - 2*A2(-q^4)",
        "q*(E(2)/E(1)^2)*(E(4)^5*E(16)^2/E(8)^5)",
        120,
        2,
        &["thm2", "thm-B"],
    ));
    reg.push(entry(
        "thm-B-2",
        "q*B2(q) + (1/2)*mu2(q^4)",
        "(1/2)*(E(2)/E(1)^2)*(E(4)^3*E(8)/E(16)^2)",
        120,
        2,
        &["thm2", "thm-B"],
    ));
    reg.push(entry(
        "thm-B-3",
        "q*B2(q) + (1/4)*mu2(q^4) - A2(-q^4)",
        "(1/4)*(E(2)^6/E(1)^4)*(E(4)^3/E(8)^4)",
        120,
        2,
        &["thm2", "thm-B"],
    ));
    reg.push(entry(
        "thm-rho-1",
        "q*rho6(q) - 2*A2(-q^6)",
        "q*E(2)^2*E(3)^2*E(6)*E(8)*E(24)/(E(1)^2*E(4)*E(12)^3)",
        120,
        2,
        &["thm2", "thm-rho"],
    ));
    reg.push(entry(
        "thm-rho-2",
        "q*rho6(q) + (1/2)*mu2(q^6)",
        "(1/2)*E(2)*E(3)^2*E(4)^2/(E(1)^2*E(8)*E(24))",
        120,
        2,
        &["thm2", "thm-rho"],
    ));
    reg.push(entry(
        "thm-rho-3",
        "q*rho6(q) + (1/4)*mu2(q^6) - A2(-q^6)",
        "(1/4)*E(2)^6*E(3)^4/(E(1)^4*E(4)^2*E(6)*E(12)^2)",
        120,
        2,
        &["thm2", "thm-rho"],
    ));
    reg.push(entry(
        "thm-lambda-1",
        "(q/2)*lambda6(q) + 2*A2(-q^6)",
        "(q/2)*E(1)*E(3)*E(4)^5*E(6)^3*E(24)^2/(E(2)^4*E(8)^2*E(12)^5)",
        120,
        2,
        &["thm2", "thm-lambda"],
    ));
    reg.push(entry(
        "thm-lambda-2",
        "(q/2)*lambda6(q) - (1/2)*mu2(q^6)",
        "-(1/2)*E(1)*E(3)*E(6)*E(8)^2*E(12)/(E(2)^2*E(4)*E(24)^2)",
        120,
        2,
        &["thm2", "thm-lambda"],
    ));
    reg.push(entry(
        "thm-lambda-3",
        "(q/2)*lambda6(q) - (1/4)*mu2(q^6) + A2(-q^6)",
        "-(1/4)*E(1)^2*E(3)^2*E(4)*E(6)^2/(E(2)^3*E(12)^3)",
        120,
        2,
        &["thm2", "thm-lambda"],
    ));
    reg.push(entry(
        "thm-Rphi-1",
        "2*phiR(q) - 2*A2(-q^2)",
        "2*q*E(2)^7*E(8)^4/(E(1)^4*E(4)^6)",
        120,
        2,
        &["thm2", "thm-Rphi"],
    ));
    reg.push(entry(
        "thm-Rphi-2",
        "2*phiR(q) + (1/2)*mu2(q^2)",
        "(1/2)*E(2)^3*E(4)^6/(E(1)^4*E(8)^4)",
        120,
        2,
        &["thm2", "thm-Rphi"],
    ));
    reg.push(entry(
        "thm-Rphi-3",
        "2*phiR(q) + (1/4)*mu2(q^2) - A2(-q^2)",
        "(1/4)*E(2)^17/(E(1)^8*E(4)^8)",
        120,
        2,
        &["thm2", "thm-Rphi"],
    ));
    reg.push(entry(
        "thm-Rxi-1",
        "(1/2)*xiR(q) + 2*A2(-q)",
        "(1/4)*E(1)^5/E(2)^4",
        120,
        2,
        &["thm2", "thm-Rxi"],
    ));
    reg.push(entry(
        "thm-Rxi-2",
        "(1/2)*xiR(q) - (1/2)*mu2(q)",
        "-(1/4)*E(1)^5/E(2)^4",
        120,
        2,
        &["thm2", "thm-Rxi"],
    ));
    reg.push(entry(
        "thm-Rxi-3",
        "(1/2)*xiR(q) - (1/4)*mu2(q) + A2(-q)",
        "0",
        120,
        2,
        &["thm2", "thm-Rxi"],
    ));
    reg.push(entry(
        "thm-psi-1",
        "psi6(q) - U0(q^3)",
        "-E(1)*E(6)^4*E(8)^2*E(12)/(E(2)^2*E(3)^2*E(4)*E(24)^2)",
        120,
        2,
        &["thm2", "thm-psi"],
    ));
    reg.push(entry(
        "thm-psi-2",
        "psi6(q) + 2*U1(q^3)",
        "q*E(1)*E(4)^5*E(6)^6*E(24)^2/(E(2)^4*E(3)^2*E(8)^2*E(12)^5)",
        120,
        2,
        &["thm2", "thm-psi"],
    ));
    reg.push(entry(
        "thm-psi-3",
        "2*psibar6(q) + U0(q^3)",
        "E(2)*E(4)^2*E(6)^3/(E(1)^2*E(3)*E(8)*E(24))",
        120,
        2,
        &["thm2", "thm-psi"],
    ));
    reg.push(entry(
        "thm-psi-4",
        "2*psibar6(q) - 2*U1(q^3)",
        "2*q*E(2)^2*E(6)^4*E(8)*E(24)/(E(1)^2*E(3)*E(4)*E(12)^3)",
        120,
        2,
        &["thm2", "thm-psi"],
    ));

    // ------------------------------------------------------------------
    // The five D_3 evaluations
    // ------------------------------------------------------------------
    reg.push(entry(
        "lemma41-1",
        "D3(1; -q; -q^9; q^3)",
        "(E(9)^3/(Tb(1,3)*Tb(9,27)*Tb(0,9))) * ( q*T(1,9)*T(6,27)/Tb(1,9) - q^2*T(4,9)*T(3,27)/Tb(4,9) - T(7,9)*T(12,27)/Tb(7,9) )",
        100,
        2,
        &["lemma41", "D3-eval"],
    ));
    reg.push(entry(
        "lemma41-2",
        "D3(1; q; q^9; q^6)",
        "-(E(18)^3/(T(1,6)*T(9,54)*T(9,18))) * ( q^2*T(10,18)*T(6,54)/T(1,18) + q^3*T(16,18)*T(12,54)/T(7,18) + T(4,18)*T(30,54)/T(13,18) )",
        100,
        2,
        &["lemma41", "D3-eval"],
    ));
    reg.push(entry(
        "lemma41-3",
        "D3(1; -q^2; -q^27; q^6)",
        "(E(18)^3/(Tb(2,6)*Tb(27,54)*Tb(9,18))) * ( q^2*T(11,18)*T(21,54)/Tb(2,18) + q^10*T(17,18)*T(3,54)/Tb(8,18) + q^4*T(5,18)*T(15,54)/Tb(14,18) )",
        100,
        2,
        &["lemma41", "D3-eval"],
    ));
    reg.push(entry(
        "lemma41-4",
        "D3(1; -q; -1; q^6)",
        "(E(18)^3/(Tb(1,6)*Tb(0,54)*Tb(0,18))) * ( q^-1*T(1,18)*T(3,54)/Tb(1,18) + q^-6*T(7,18)*T(21,54)/Tb(7,18) + q^-5*T(13,18)*T(39,54)/Tb(13,18) )",
        100,
        2,
        &["lemma41", "D3-eval"],
    ));
    reg.push(entry(
        "lemma41-5",
        "D3(1; q; -1; q^3)",
        "-(E(9)^3/(E(1)*Tb(0,27)*Tb(0,9))) * ( q^-1*Tb(1,9)*Tb(3,27)/T(1,9) - q^-3*Tb(4,9)*Tb(12,27)/T(4,9) + q^-2*Tb(7,9)*Tb(21,27)/T(7,9) )",
        100,
        2,
        &["lemma41", "D3-eval"],
    ));

    // ------------------------------------------------------------------
    // The four theta identities closing the sixth-order proofs
    // ------------------------------------------------------------------
    reg.push(valence(
        entry(
            "prop42-1",
            "Tb(3,12)*E(6)^2/(Tb(1,4)*Tb(9,36))",
            "-D3(1; -q; -q^9; q^3) + E(27)^3*E(9)^2/(Tb(0,27)*Tb(9,27)^3)",
            120,
            2,
            &["prop42"],
        ),
        216,
    ));
    reg.push(valence(
        entry(
            "prop42-2",
            "q*T(3,6)*E(3)^2/(T(1,2)*T(9,18))",
            "-D3(1; q; q^9; q^6) - E(54)^3*T(18,54)^2/(T(9,54)^3*T(27,54))",
            120,
            2,
            &["prop42"],
        ),
        54,
    ));
    reg.push(valence(
        entry(
            "prop42-3",
            "-T(3,6)*E(6)^2/(Tb(1,4)*Tb(9,36))",
            "D3(1; -q^2; -q^27; q^6) + D3(1; -q; -1; q^6) + q^12*E(54)^3*T(9,54)^2/(Tb(27,54)^2*Tb(18,54)^2) - q^-6*E(54)^3*T(9,54)^2/(Tb(0,54)^2*Tb(9,54)^2)",
            120,
            2,
            &["prop42"],
        ),
        216,
    ));
    reg.push(valence(
        entry(
            "prop42-4",
            "2*q*Tb(3,12)*E(3)^2/(T(1,2)*T(9,18))",
            "-D3(1; q; -1; q^3) + q*E(6)^3/(E(1)*E(2)) + 2*q^9*Tb(27,108)^3/(E(9)*Tb(9,36)) - 2*E(27)^3*Tb(9,27)^2/(E(9)^2*Tb(0,27)*Tb(9,27)) + q^6*E(54)^3/(E(9)*E(18)) + q^-3*E(27)^3*Tb(9,27)^2/(E(9)^2*Tb(0,27)^2)",
            120,
            2,
            &["prop42"],
        ),
        216,
    ));

    // ------------------------------------------------------------------
    // The thirteen D_2 evaluations
    // ------------------------------------------------------------------
    reg.push(entry(
        "prop5x-1",
        "D2(1; q^3; q^8; q^4)",
        "-q*E(2)*E(4)^5*E(16)^2/(E(1)^2*E(8)^5)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-2",
        "D2(1; q^3; q^12; q^4)",
        "-(1/2)*E(2)*E(4)^3*E(8)/(E(1)^2*E(16)^2)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-3",
        "D2(1; q; q^12; q^6)",
        "-q*E(2)^2*E(3)^2*E(6)*E(8)*E(24)/(E(1)^2*E(4)*E(12)^3)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-4",
        "D2(1; q; q^18; q^6)",
        "-(1/2)*E(2)*E(3)^2*E(4)^2/(E(1)^2*E(8)*E(24))",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-5",
        "D2(1; -q^2; q^12; q^6)",
        "q^2*E(2)*E(6)^2*E(24)^3/(E(8)*E(12)^4)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-6",
        "D2(1; -q; q^12; q^6)",
        "q*E(1)^2*E(4)*E(6)^7*E(8)*E(24)/(E(2)^4*E(3)^2*E(12)^5)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-7",
        "D2(1; -q^2; -1; q^6)",
        "-E(2)*E(12)^4*E(16)^2*E(24)/(E(4)^2*E(6)^2*E(8)*E(48)^2)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-8",
        "D2(1; q; q^4; q^2)",
        "-2*q*E(2)^7*E(8)^4/(E(1)^4*E(4)^6)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-9",
        "D2(1; q; q^-2; q^2)",
        "-(1/2)*E(2)^3*E(4)^6/(E(1)^4*E(8)^4)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-10",
        "D2(1; -1; q^2; q)",
        "(1/4)*E(1)^5/E(2)^4",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-11",
        "D2(1; -1; q^-1; q)",
        "-(1/4)*E(1)^5/E(2)^4",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-12",
        "D2(1; -q; -1; q^3)",
        "-E(1)*E(6)^4*E(8)^2*E(12)/(E(2)^2*E(3)^2*E(4)*E(24)^2)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));
    reg.push(entry(
        "prop5x-13",
        "D2(1; -q; -q^6; q^3)",
        "q*E(1)*E(4)^5*E(6)^6*E(24)^2/(E(2)^4*E(3)^2*E(8)^2*E(12)^5)",
        100,
        2,
        &["prop5x", "D2-eval"],
    ));

    // ------------------------------------------------------------------
    // The eleven supporting theta identities
    // ------------------------------------------------------------------
    reg.push(entry(
        "lemma5-theta-1",
        "(1/2)*E(2)*E(8)^5*E(12)^5*E(48)/(E(4)^3*E(6)^3*E(16)^3*E(24)^3) + (1/2)*E(4)^4*E(24)^4/(E(2)*E(6)*E(8)^2*E(12)^2*E(16)*E(48)) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-2",
        "(1/2)*E(1)*E(4)^5*E(6)^5*E(24)/(E(2)^3*E(3)^3*E(8)^3*E(12)^3) + (1/2)*E(2)^4*E(12)^4/(E(1)*E(3)*E(4)^2*E(6)^2*E(8)*E(24)) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-3",
        "E(1)*E(6)^4*E(8)^3/(E(3)^3*E(4)^4*E(24)) + q*E(2)^5*E(8)*E(12)*E(24)/(E(1)*E(3)*E(4)^5*E(6)) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-4",
        "E(1)^2*E(4)^4*E(6)*E(12)^2/(E(2)^5*E(3)^2*E(8)*E(24)) + 2*q*E(1)^2*E(4)*E(6)^2*E(8)*E(24)/(E(2)^4*E(3)^2*E(12)) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-5",
        "E(1)*E(6)^4*E(8)^3/(E(3)^3*E(4)^4*E(24)) + q*E(2)^5*E(8)*E(12)*E(24)/(E(1)*E(3)*E(4)^5*E(6)) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-6",
        "E(2)^3*E(12)^3*E(16)^2*E(24)^3/(E(1)*E(3)*E(4)*E(6)^3*E(8)^3*E(48)^2) - q*(E(4)^2*E(12)^4*E(48)/(E(3)^2*E(6)^2*E(8)^2*E(24))) * ( T(1,12)*T(20,48)/(T(5,12)*T(2,24)) + q^4*T(5,12)*T(4,48)/(T(1,12)*T(10,24)) ) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-7",
        "q*E(4)^4*E(6)*E(24)^2/(E(1)*E(2)*E(3)*E(8)^2*E(12)^2) - E(2)*E(8)^2*E(12)^4/(E(1)*E(3)*E(4)^2*E(6)*E(24)^2) + 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-8",
        "4*q*E(1)^4*E(4)^2*E(8)^4/E(2)^10 + E(1)^4*E(4)^14/(E(8)^4*E(2)^14) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-9",
        "E(1)^2*E(6)^3*E(8)^2*E(12)^3/(E(2)^3*E(3)^2*E(4)^3*E(24)^2) + 2*q*E(1)*E(3)*E(8)*E(24)/(E(2)^2*E(4)^2) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-10",
        "q*E(1)^2*E(4)^3*E(6)^5*E(24)^2/(E(2)^5*E(3)^2*E(8)^2*E(12)^3) + E(1)*E(3)*E(4)*E(12)^3/(E(2)^3*E(6)*E(8)*E(24)) - 1",
        "0",
        100,
        2,
        &["lemma5-theta"],
    ));
    reg.push(entry(
        "lemma5-theta-11",
        "Tb(8,12)*Tb(4,24)/Tb(2,12) + Tb(2,12)*Tb(16,24)/Tb(8,12)",
        "2*E(6)^2*E(16)^2/(E(4)*E(8)*E(12))",
        100,
        2,
        &["lemma5-theta"],
    ));

    // ------------------------------------------------------------------
    // Dual definitions: Eulerian sum vs Appell form for all 19 functions
    // ------------------------------------------------------------------
    for (i, f) in crate::mock::MockFunction::ALL.iter().enumerate() {
        reg.push(entry(
            &format!("appell-form-{}", i + 1),
            &format!("{}(q)", f.name()),
            f.appell_form(),
            80,
            2,
            &["appell-form"],
        ));
    }

    reg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl;

    #[test]
    fn registry_counts_by_tag() {
        let reg = builtin_registry();
        let count = |tag: &str| reg.iter().filter(|s| s.tags.iter().any(|t| t == tag)).count();
        assert_eq!(count("tenth"), 6);
        assert_eq!(count("sixth"), 2);
        assert_eq!(count("new-sixth"), 3);
        assert_eq!(count("thm2"), 19);
        assert_eq!(count("lemma41"), 5);
        assert_eq!(count("prop42"), 4);
        assert_eq!(count("prop5x"), 13);
        assert_eq!(count("lemma5-theta"), 11);
        assert_eq!(count("appell-form"), 19);
        assert_eq!(reg.len(), 82);
    }

    #[test]
    fn every_entry_parses() {
        for spec in builtin_registry() {
            dsl::parse(&spec.lhs)
                .unwrap_or_else(|e| panic!("{} lhs failed to parse: {}", spec.name, e));
            dsl::parse(&spec.rhs)
                .unwrap_or_else(|e| panic!("{} rhs failed to parse: {}", spec.name, e));
        }
    }

    #[test]
    fn names_are_unique() {
        let reg = builtin_registry();
        let mut names: Vec<&str> = reg.iter().map(|s| s.name.as_str()).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), reg.len());
    }

    #[test]
    fn ingestion_round_trip_and_unknown_field_rejection() {
        let reg = builtin_registry();
        let json = serde_json::to_string(&reg[..3]).unwrap();
        let back = load_identities(&json).unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(back[0].name, reg[0].name);

        let bad = r#"[{"name":"x","lhs":"q","rhs":"q","default_order":10,
                       "cyclotomic_order":2,"tags":[],"surprise":1}]"#;
        assert!(load_identities(bad).is_err());
    }
}
