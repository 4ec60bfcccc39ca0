//! Spherical generator data, the grading of the weight monoid, and the
//! Weyl-word bookkeeping for the two diagram extensions: the alternating
//! w-sequence with its four defining conditions, the distinguished root
//! `gamma_0 = alpha_0 + beta_0 + alpha_1`, and the orbit and root
//! enumerations inside the type-D sub-diagram.

use crate::linalg::{rat_int, QMatrix, Rat};
use crate::report::CheckRecord;
use crate::root_system::{
    ExtendedGcm, Family, Gcm, KExtension, RootSystemError, RootVector, Weight, WeylWord, ALPHA0,
    BETA0,
};
use num::{Signed, ToPrimitive, Zero};

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Root(#[from] RootSystemError),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("generators are not linearly independent")]
    DependentGenerators,
    #[error("generators do not span the weight space")]
    NotSpanning,
    #[error("sweep bound {0} exceeds the supported maximum {1}")]
    SweepBound(usize, usize),
}

type Result<T> = std::result::Result<T, ModelError>;

/// Generators of the weight monoid of a spherical case, with their grading.
#[derive(Debug, Clone)]
pub struct SphericalData {
    pub label: String,
    pub gcm: Gcm,
    pub generators: Vec<Weight>,
    pub grados: Vec<i64>,
}

/// Generator matrix with the generators as columns.
fn generator_matrix(data: &SphericalData) -> QMatrix {
    let n = data.gcm.size();
    let g = data.generators.len();
    let mut m = QMatrix::zero(n, g);
    for (j, eps) in data.generators.iter().enumerate() {
        for i in 0..n {
            m[(i, j)] = rat_int(eps.0[i]);
        }
    }
    m
}

impl SphericalData {
    fn new(label: String, gcm: Gcm, generators: Vec<Weight>, grados: Vec<i64>) -> Result<Self> {
        let data = SphericalData {
            label,
            gcm,
            generators,
            grados,
        };
        if generator_matrix(&data).rank() != data.generators.len() {
            return Err(ModelError::DependentGenerators);
        }
        Ok(data)
    }

    /// Coefficients of `lambda` in the generator basis, when `lambda` lies
    /// in the monoid they generate freely.
    pub fn monoid_coefficients(&self, lambda: &Weight) -> Option<Vec<i64>> {
        if lambda.len() != self.gcm.size() {
            return None;
        }
        let sol = generator_matrix(self).solve(&lambda.to_rat())?;
        let mut out = Vec::with_capacity(sol.len());
        for c in &sol {
            if !c.is_integer() || c.is_negative() {
                return None;
            }
            out.push(c.to_integer().to_i64()?);
        }
        Some(out)
    }

    /// Grading of a monoid element; `None` outside the monoid.
    pub fn grado(&self, lambda: &Weight) -> Option<i64> {
        let coeffs = self.monoid_coefficients(lambda)?;
        Some(coeffs.iter().zip(&self.grados).map(|(a, g)| a * g).sum())
    }

    /// Rational linear extension of the grading, defined whenever the
    /// generators span the weight space.
    pub fn grado_rational(&self, v: &[Rat]) -> Result<Rat> {
        let m = generator_matrix(self);
        if m.rank() != self.gcm.size() {
            return Err(ModelError::NotSpanning);
        }
        let sol = m.solve(v).ok_or(ModelError::NotSpanning)?;
        Ok(sol
            .iter()
            .zip(&self.grados)
            .map(|(a, g)| a * rat_int(*g))
            .sum())
    }

    /// Values of the extended grading on the simple roots.
    pub fn grado_on_roots(&self) -> Result<Vec<Rat>> {
        let n = self.gcm.size();
        (0..n)
            .map(|j| {
                let alpha = self.gcm.simple_root_weight(j)?;
                self.grado_rational(&alpha.to_rat())
            })
            .collect()
    }

    /// Monoid element with the given generator coefficients.
    pub fn combine(&self, coeffs: &[i64]) -> Weight {
        let mut out = Weight::zero(self.gcm.size());
        for (a, eps) in coeffs.iter().zip(&self.generators) {
            out = &out + &eps.scale(*a);
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.gcm.size()
    }
}

/// Generators for the model cases: `eps_i = omega_i`, except that the last
/// generator of the B family is `2 omega_l`.
pub fn model_generators(family: Family, rank: usize) -> Result<SphericalData> {
    let gcm = Gcm::finite(family, rank).map_err(ModelError::Root)?;
    let mut gens = Vec::with_capacity(rank);
    for i in 0..rank {
        let mut w = Weight::fundamental(rank, i);
        if family == Family::B && i == rank - 1 {
            w = w.scale(2);
        }
        gens.push(w);
    }
    let grados = (1..=rank as i64).collect();
    SphericalData::new(family.to_string(), gcm, gens, grados)
}

/// Generators for the spherical case inside `B_n`:
/// `(omega_1, omega_p, omega_{p+1})` graded `(1, 2, 3)`.
pub fn sph_generators(n: usize, p: usize) -> Result<SphericalData> {
    if p < 2 || p + 2 > n {
        return Err(ModelError::BadParams(format!(
            "need 2 <= p <= n-2, got n={n}, p={p}"
        )));
    }
    let gcm = Gcm::finite(Family::B, n).map_err(ModelError::Root)?;
    let gens = vec![
        Weight::fundamental(n, 0),
        Weight::fundamental(n, p - 1),
        Weight::fundamental(n, p),
    ];
    SphericalData::new(format!("Sph({n},{p})"), gcm, gens, vec![1, 2, 3])
}

/// Independence of the generators (the freeness witness for the monoid).
pub fn check_independence(data: &SphericalData) -> CheckRecord {
    let ok = generator_matrix(data).rank() == data.generators.len();
    CheckRecord::of(
        "generator-independence",
        &data.label,
        data.rank(),
        ok,
        "generators are linearly dependent",
    )
}

/// Sign pattern of the grading on simple roots: zero away from the last
/// node, strictly positive there.
pub fn check_grado_on_roots(data: &SphericalData) -> Result<CheckRecord> {
    let values = data.grado_on_roots()?;
    let n = values.len();
    let ok = values[..n - 1].iter().all(|v| v.is_zero()) && values[n - 1].is_positive();
    Ok(CheckRecord::of(
        "grado-root-signs",
        &data.label,
        data.rank(),
        ok,
        format!(
            "grado on simple roots = [{}]",
            values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    ))
}

/// Monotonicity of the grading under dominance: for all monoid elements
/// `lambda`, `mu` with generator coefficients at most `bound` and all
/// dominant `nu <= lambda + mu` lying in the monoid,
/// `grado(nu) <= grado(lambda) + grado(mu)`.
pub fn check_h5(data: &SphericalData, bound: usize) -> Result<Vec<CheckRecord>> {
    const MAX_BOUND: usize = 4;
    const BOX_CAP: usize = 2_000_000;
    if bound > MAX_BOUND {
        return Err(ModelError::SweepBound(bound, MAX_BOUND));
    }
    let g = data.generators.len();
    let mut coeff_vectors = Vec::new();
    let mut cur = vec![0i64; g];
    loop {
        coeff_vectors.push(cur.clone());
        let mut pos = 0;
        loop {
            if pos == g {
                break;
            }
            if cur[pos] < bound as i64 {
                cur[pos] += 1;
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
        if pos == g {
            break;
        }
    }
    let mut checked = 0usize;
    let mut failure: Option<String> = None;
    'outer: for (i, a) in coeff_vectors.iter().enumerate() {
        for b in &coeff_vectors[i..] {
            let lambda = data.combine(a);
            let mu = data.combine(b);
            let total = &lambda + &mu;
            let budget: i64 = data.grado(&lambda).unwrap() + data.grado(&mu).unwrap();
            for nu in data.gcm.dominated_dominant(&total, BOX_CAP)? {
                if let Some(gn) = data.grado(&nu) {
                    checked += 1;
                    if gn > budget {
                        failure = Some(format!(
                            "lambda={lambda}, mu={mu}, nu={nu}: grado {gn} > {budget}"
                        ));
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(vec![CheckRecord::of(
        "h5-monotone",
        &data.label,
        data.rank(),
        failure.is_none(),
        failure.unwrap_or_else(|| format!("checked {checked} triples")),
    )])
}

/// The chain word `s_1 s_2 ... s_i` over the finite diagram (0-based
/// letters).
fn chain_word(i: usize) -> WeylWord {
    WeylWord((0..i).collect())
}

/// `u_i(eps_i) = eps_{i+1} - eps_1` for the model generators,
/// with `u_i = s_1 s_2 ... s_i`.
pub fn check_mod3(family: Family, rank: usize) -> Result<Vec<CheckRecord>> {
    let data = model_generators(family, rank)?;
    let mut records = Vec::new();
    for i in 1..rank {
        let u = chain_word(i);
        let got = data
            .gcm
            .act(&u, &data.generators[i - 1])
            .map_err(ModelError::Root)?;
        let want = &data.generators[i] - &data.generators[0];
        records.push(CheckRecord::of(
            format!("mod3-u{i}"),
            &data.label,
            rank,
            got == want,
            format!("u_{i}(eps_{i}) = {got}, expected {want}"),
        ));
    }
    Ok(records)
}

/// The two word identities of the spherical case:
/// `u_1(eps_1) = eps_2 - omega_{p-1}` with `u_1 = s_{p-1} ... s_2 s_1`, and
/// `u_2(eps_2) = eps_3 - eps_1` with `u_2 = s_1 s_2 ... s_p`.
pub fn check_sph3(n: usize, p: usize) -> Result<Vec<CheckRecord>> {
    let data = sph_generators(n, p)?;
    let label = &data.label;
    let gcm = &data.gcm;
    let mut records = Vec::new();

    let u1 = WeylWord((0..p - 1).rev().collect());
    let got1 = gcm
        .act(&u1, &data.generators[0])
        .map_err(ModelError::Root)?;
    let want1 = &data.generators[1] - &Weight::fundamental(n, p - 2);
    records.push(CheckRecord::of(
        "sph3-u1",
        label,
        n,
        got1 == want1,
        format!("u_1(eps_1) = {got1}, expected {want1}"),
    ));

    let len1 = gcm.length(&u1).map_err(ModelError::Root)?;
    records.push(CheckRecord::of(
        "sph3-u1-length",
        label,
        n,
        len1 == p - 1,
        format!("length(u_1) = {len1}, expected {}", p - 1),
    ));

    let u2 = chain_word(p);
    let got2 = gcm
        .act(&u2, &data.generators[1])
        .map_err(ModelError::Root)?;
    let want2 = &data.generators[2] - &data.generators[0];
    records.push(CheckRecord::of(
        "sph3-u2",
        label,
        n,
        got2 == want2,
        format!("u_2(eps_2) = {got2}, expected {want2}"),
    ));
    Ok(records)
}

/// One step of the alternating sequence.
#[derive(Debug, Clone)]
pub struct WStep {
    pub w: WeylWord,
    pub zeta: Weight,
    /// Reflection node added at this step; `None` at step zero.
    pub gamma: Option<usize>,
    /// The interleaved finite-diagram word for this step (step-indexed, so
    /// steps 0 and 1 carry the empty word).
    pub u: WeylWord,
}

/// The alternating sequence together with its ambient extension.
#[derive(Debug)]
pub struct WSequence {
    pub ext: ExtendedGcm,
    pub data: SphericalData,
    pub steps: Vec<WStep>,
}

/// Build the extension for a spherical case.
pub fn extension_for(data_kind: &KExtension, rank: usize) -> Result<ExtendedGcm> {
    match data_kind {
        KExtension::Model(f) => ExtendedGcm::model_k(*f, rank).map_err(ModelError::Root),
        KExtension::Sph { p } => ExtendedGcm::sph_k(rank, *p).map_err(ModelError::Root),
    }
}

/// Construct `w_0 = id`, `w_1 = s_{alpha_0}`, and then
/// `w_h = s_{gamma_h} u_h w_{h-1}` with `gamma_h` alternating between
/// `alpha_0` (odd steps) and `beta_0` (even steps), the `u_h` being the
/// interleaved chain words; `zeta_h = w_h(pi_{alpha_0})`.
pub fn build_w_sequence(kind: KExtension, rank: usize) -> Result<WSequence> {
    let ext = extension_for(&kind, rank)?;
    let (data, step_words) = match kind {
        KExtension::Model(f) => {
            let data = model_generators(f, rank)?;
            // Step h >= 2 interleaves s_1 ... s_{h-1}.
            let words: Vec<WeylWord> = (0..=rank)
                .map(|h| {
                    if h < 2 {
                        WeylWord::identity()
                    } else {
                        chain_word(h - 1)
                    }
                })
                .collect();
            (data, words)
        }
        KExtension::Sph { p } => {
            let data = sph_generators(rank, p)?;
            let words = vec![
                WeylWord::identity(),
                WeylWord::identity(),
                WeylWord((0..p - 1).rev().collect()),
                chain_word(p),
            ];
            (data, words)
        }
    };

    let omega0 = Weight::fundamental(ext.gcm.size(), ALPHA0);
    let mut steps = vec![WStep {
        w: WeylWord::identity(),
        zeta: omega0.clone(),
        gamma: None,
        u: WeylWord::identity(),
    }];
    for h in 1..step_words.len() {
        let gamma = if h % 2 == 1 { ALPHA0 } else { BETA0 };
        let u_ext = ext.embed_word(&step_words[h]);
        let prev = &steps[h - 1].w;
        let word = WeylWord(vec![gamma]).then(&u_ext).then(prev);
        let w = ext.gcm.reduce(&word).map_err(ModelError::Root)?;
        let zeta = ext.gcm.act(&w, &omega0).map_err(ModelError::Root)?;
        steps.push(WStep {
            w,
            zeta,
            gamma: Some(gamma),
            u: step_words[h].clone(),
        });
    }
    Ok(WSequence { ext, data, steps })
}

/// Verify the four defining conditions of the sequence, plus the coordinate
/// description of each `zeta_h`.
pub fn verify_w_sequence(seq: &WSequence) -> Result<Vec<CheckRecord>> {
    let ext = &seq.ext;
    let gcm = &ext.gcm;
    let label = &seq.data.label;
    let rank = seq.data.rank();
    let omega0 = Weight::fundamental(gcm.size(), ALPHA0);
    let mut records = Vec::new();
    for h in 1..seq.steps.len() {
        let step = &seq.steps[h];
        let gamma = step.gamma.expect("steps past zero carry a reflection node");

        // (1) Recursion shape: w_h equals s_{gamma_h} u_h w_{h-1} as a group
        // element, with gamma_h the expected alternating node.
        let expected_gamma = if h % 2 == 1 { ALPHA0 } else { BETA0 };
        let recomposed = WeylWord(vec![gamma])
            .then(&ext.embed_word(&step.u))
            .then(&seq.steps[h - 1].w);
        let shape_ok = gamma == expected_gamma
            && gcm
                .same_element(&step.w, &recomposed)
                .map_err(ModelError::Root)?;
        records.push(CheckRecord::of(
            format!("w{h}-recursion"),
            label,
            rank,
            shape_ok,
            format!("step {h} does not factor as s_gamma * u * w_prev"),
        ));

        // (2) Additive lengths: l(w_h) = 1 + l(u_h) + l(w_{h-1}).
        let len_u = seq.data.gcm.length(&step.u).map_err(ModelError::Root)?;
        let want_len = 1 + len_u + seq.steps[h - 1].w.len();
        records.push(CheckRecord::of(
            format!("w{h}-length"),
            label,
            rank,
            step.w.len() == want_len,
            format!("length(w_{h}) = {}, expected {want_len}", step.w.len()),
        ));

        // (3) Coordinates of zeta_h: pairing -1 against gamma_h, 0 against
        // the other added node, and restriction eps_h on the finite nodes —
        // all at once as zeta_h = lift(eps_h) - pi_{gamma_h}.
        let eps = &seq.data.generators[h - 1];
        let want_zeta =
            &ext.lift(eps).map_err(ModelError::Root)? - &Weight::fundamental(gcm.size(), gamma);
        records.push(CheckRecord::of(
            format!("w{h}-zeta"),
            label,
            rank,
            step.zeta == want_zeta,
            format!("zeta_{h} = {}, expected {want_zeta}", step.zeta),
        ));

        // (4) Stability: u_k(zeta_h) = zeta_h for all k <= h.
        let mut stable = true;
        for k in 0..=h {
            let u_ext = ext.embed_word(&seq.steps[k].u);
            if gcm.act(&u_ext, &step.zeta).map_err(ModelError::Root)? != step.zeta {
                stable = false;
                break;
            }
        }
        records.push(CheckRecord::of(
            format!("w{h}-stability"),
            label,
            rank,
            stable,
            format!("some u_k with k <= {h} moves zeta_{h}"),
        ));
    }
    // Step zero sanity: zeta_0 is the fundamental weight itself.
    records.push(CheckRecord::of(
        "w0-zeta",
        label,
        rank,
        seq.steps[0].zeta == omega0,
        "zeta_0 differs from the fundamental weight at alpha_0",
    ));
    Ok(records)
}

/// Identities around the root `gamma_0 = alpha_0 + beta_0 + alpha_1` of the
/// model extension.
pub fn verify_lem_k(family: Family, rank: usize) -> Result<Vec<CheckRecord>> {
    if rank < 2 {
        return Err(ModelError::BadParams(
            "the gamma_0 identities need rank >= 2".into(),
        ));
    }
    let ext = ExtendedGcm::model_k(family, rank)?;
    let data = model_generators(family, rank)?;
    let label = &data.label;
    let gcm = &ext.gcm;
    let size = gcm.size();
    let mut records = Vec::new();

    // gamma_0 as a root vector of the extension: alpha_0 + beta_0 + alpha_1.
    let mut coords = vec![0i64; size];
    coords[ALPHA0] = 1;
    coords[BETA0] = 1;
    coords[ext.g_node(1)] = 1;
    let gamma0 = RootVector(coords);

    // Its weight equals pi_{alpha_0} + pi_{beta_0} - lift(eps_2).
    let got = gcm.root_to_weight(&gamma0).map_err(ModelError::Root)?;
    let want = &(&Weight::fundamental(size, ALPHA0) + &Weight::fundamental(size, BETA0))
        - &ext.lift(&data.generators[1]).map_err(ModelError::Root)?;
    records.push(CheckRecord::of(
        "lemk-gamma0-weight",
        label,
        rank,
        got == want,
        format!("weight of gamma_0 = {got}, expected {want}"),
    ));

    // gamma_0 is a positive root of the type-D sub-diagram.
    let levi = ext.levi_nodes();
    let sub = gcm.sub(&levi).map_err(ModelError::Root)?;
    let sub_coords: Vec<i64> = levi.iter().map(|&i| gamma0.0[i]).collect();
    let is_root = sub
        .positive_roots()
        .map_err(ModelError::Root)?
        .contains(&RootVector(sub_coords));
    records.push(CheckRecord::of(
        "lemk-gamma0-root",
        label,
        rank,
        is_root,
        "gamma_0 is not a root of the type-D sub-diagram",
    ));

    // The reflected fundamental weight restricts to the first generator.
    let zeta1 = gcm
        .reflect(ALPHA0, &Weight::fundamental(size, ALPHA0))
        .map_err(ModelError::Root)?;
    let restricted = ext.restrict(&zeta1).map_err(ModelError::Root)?;
    records.push(CheckRecord::of(
        "lemk-eps1",
        label,
        rank,
        restricted == data.generators[0],
        format!(
            "restriction of s_0(pi_0) = {restricted}, expected {}",
            data.generators[0]
        ),
    ));

    // The far node pairs to zero with gamma_0 once the diagram is long
    // enough to separate them.
    if rank >= 3 {
        let pairing = gcm
            .pairing_root(ext.g_node(rank), &gamma0)
            .map_err(ModelError::Root)?;
        records.push(CheckRecord::of(
            "lemk-far-node",
            label,
            rank,
            pairing == 0,
            format!("<alpha_l^vee, gamma_0> = {pairing}, expected 0"),
        ));
    }
    Ok(records)
}

/// Orbit of the fundamental weight at `alpha_0` under the type-D
/// sub-diagram's Weyl group: the orbit has size `2^l`, and the elements
/// that stay dominant on the interior finite nodes are exactly
/// `pi_{alpha_0}` and the `zeta_h`.
pub fn verify_ip6_orbit(family: Family, rank: usize) -> Result<Vec<CheckRecord>> {
    const MAX_RANK: usize = 10;
    if rank > MAX_RANK {
        return Err(ModelError::SweepBound(rank, MAX_RANK));
    }
    if rank < 2 {
        return Err(ModelError::BadParams("orbit check needs rank >= 2".into()));
    }
    let ext = ExtendedGcm::model_k(family, rank)?;
    let data = model_generators(family, rank)?;
    let label = &data.label;
    let gcm = &ext.gcm;
    let size = gcm.size();
    let omega0 = Weight::fundamental(size, ALPHA0);

    let orbit = gcm
        .orbit(&omega0, &ext.levi_nodes(), 1 << (MAX_RANK + 1))
        .map_err(ModelError::Root)?;
    let mut records = Vec::new();
    records.push(CheckRecord::of(
        "ip6-orbit-size",
        label,
        rank,
        orbit.len() == 1 << rank,
        format!("orbit size {}, expected {}", orbit.len(), 1 << rank),
    ));

    // Keep the orbit elements dominant on the interior finite nodes
    // alpha_1 .. alpha_{l-1}.
    let interior: Vec<usize> = (1..rank).map(|i| ext.g_node(i)).collect();
    let survivors: std::collections::BTreeSet<Weight> = orbit
        .into_iter()
        .filter(|mu| interior.iter().all(|&i| mu.0[i] >= 0))
        .collect();

    // Expected: the fundamental weight itself plus lift(eps_h) - pi_{gamma_h}
    // with gamma alternating between alpha_0 and beta_0.
    let mut expected = std::collections::BTreeSet::new();
    expected.insert(omega0.clone());
    for h in 1..=rank {
        let gamma = if h % 2 == 1 { ALPHA0 } else { BETA0 };
        let zeta = &ext
            .lift(&data.generators[h - 1])
            .map_err(ModelError::Root)?
            - &Weight::fundamental(size, gamma);
        expected.insert(zeta);
    }
    records.push(CheckRecord::of(
        "ip6-orbit-classes",
        label,
        rank,
        survivors == expected,
        format!(
            "survivors {:?}, expected {:?}",
            survivors.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            expected.iter().map(|w| w.to_string()).collect::<Vec<_>>()
        ),
    ));
    records.push(CheckRecord::of(
        "ip6-orbit-count",
        label,
        rank,
        survivors.len() == rank + 1,
        format!(
            "{} surviving classes, expected {}",
            survivors.len(),
            rank + 1
        ),
    ));
    Ok(records)
}

/// Positive roots `a alpha_0 + b beta_0 + gamma` of the type-D sub-diagram:
/// the extension coefficients never exceed one, and among the roots with
/// `a = b = 1` exactly one admits a dominant complement `2 eps_1 - gamma`,
/// namely `gamma = alpha_1`, where the complement is `eps_2`.
pub fn verify_ip6_roots(family: Family, rank: usize) -> Result<Vec<CheckRecord>> {
    const MAX_RANK: usize = 10;
    if rank > MAX_RANK {
        return Err(ModelError::SweepBound(rank, MAX_RANK));
    }
    if rank < 2 {
        return Err(ModelError::BadParams("root sweep needs rank >= 2".into()));
    }
    let ext = ExtendedGcm::model_k(family, rank)?;
    let data = model_generators(family, rank)?;
    let label = &data.label;
    let levi = ext.levi_nodes();
    let sub = ext.gcm.sub(&levi).map_err(ModelError::Root)?;
    let roots = sub.positive_roots().map_err(ModelError::Root)?;

    // In the sub-diagram's ordering, index 0 is alpha_0, index 1 is beta_0,
    // and indices 2.. are alpha_1 .. alpha_{l-1}.
    let mut coeff_ok = true;
    let mut seen_pairs = std::collections::BTreeSet::new();
    let mut admissible = Vec::new();
    for r in &roots {
        let (a, b) = (r.0[0], r.0[1]);
        if a > 1 || b > 1 {
            coeff_ok = false;
        }
        if (a, b) != (0, 0) {
            seen_pairs.insert((a, b));
        }
        if (a, b) == (1, 1) {
            // gamma as a root vector of the finite diagram (zero at the
            // nodes outside the sub-diagram).
            let mut g_coords = vec![0i64; rank];
            for (k, &c) in r.0[2..].iter().enumerate() {
                g_coords[k] = c;
            }
            let gamma_weight = data
                .gcm
                .root_to_weight(&RootVector(g_coords.clone()))
                .map_err(ModelError::Root)?;
            let complement = &data.generators[0].scale(2) - &gamma_weight;
            if complement.is_dominant() {
                admissible.push((RootVector(g_coords), complement));
            }
        }
    }
    let mut records = Vec::new();
    records.push(CheckRecord::of(
        "ip6-roots-coefficients",
        label,
        rank,
        coeff_ok
            && seen_pairs
                .iter()
                .all(|p| [(0, 1), (1, 0), (1, 1)].contains(p)),
        format!("extension coefficient pairs seen: {seen_pairs:?}"),
    ));
    let alpha1 = RootVector::simple(rank, 0);
    let unique_ok =
        admissible.len() == 1 && admissible[0].0 == alpha1 && admissible[0].1 == data.generators[1];
    records.push(CheckRecord::of(
        "ip6-roots-unique",
        label,
        rank,
        unique_ok,
        format!(
            "admissible gammas: {:?}",
            admissible
                .iter()
                .map(|(g, c)| format!("{g} -> {c}"))
                .collect::<Vec<_>>()
        ),
    ));
    Ok(records)
}
