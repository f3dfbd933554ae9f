//! Acceptance checks on the worked del Pezzo and torsion examples plus the
//! property suites. Runs without the libtest harness; prints one line per
//! criterion and exits nonzero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::error::Error;
use std::process::ExitCode;
use std::time::Instant;

use bunch_core::bunch::{ambient_fan_in, enumerate_chamber_fan, BunchedRing, OrbitConeSet, DEFAULT_MAX_VARS};
use bunch_core::cones::{gale_transform, stellar_subdivide, unimodular_certificate, Cone, FaceOfOrthant, Fan};
use bunch_core::geometry::variety_report;
use bunch_core::groups::{smith_normal_form, AbelianGroup, GradingMap, Index};
use bunch_core::linalg::{zvec, IntMatrix, ZVec};
use bunch_core::modify::{
    blow_up, blowup_cox_relation, check_admissible, contract, contract_cox_relation, contract_variable,
    find_contractions, Model, StellarData,
};
use bunch_core::poly::{Attestations, CoxPresentation, GradedPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, Box<dyn Error>>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+).into());
        }
    };
}

const Q1: [[i64; 5]; 2] = [[1, -1, 0, -1, 1], [1, 1, 1, 0, 2]];
const P1: [[i64; 5]; 3] = [[1, 0, -1, 1, 0], [0, 1, -1, -1, 0], [-1, 0, -1, 0, 1]];

fn q(rows: &[&[i64]]) -> GradingMap {
    GradingMap::free_from_matrix(&IntMatrix::from_i64(rows))
}

fn cone(rays: &[&[i64]]) -> Cone {
    Cone::generated_by(rays[0].len(), &rays.iter().map(|r| zvec(r)).collect::<Vec<_>>()).unwrap()
}

fn poly(s: &str, r: usize) -> GradedPoly {
    GradedPoly::parse(s, r).unwrap()
}

/// `w_i`, one-based.
fn weight(i: usize) -> [i64; 2] {
    [Q1[0][i - 1], Q1[1][i - 1]]
}

fn wcone(a: usize, b: usize) -> Cone {
    cone(&[&weight(a), &weight(b)])
}

fn face(one_based: &[usize]) -> FaceOfOrthant {
    FaceOfOrthant::new(one_based.iter().map(|i| i - 1))
}

fn p1() -> IntMatrix {
    IntMatrix::from_i64(&[&P1[0], &P1[1], &P1[2]])
}

fn delpezzo_pres() -> CoxPresentation {
    CoxPresentation::new(
        q(&[&Q1[0], &Q1[1]]),
        vec![poly("T1*T2 + T3^2 + T4*T5", 5)],
        Attestations::default(),
    )
    .unwrap()
}

fn delpezzo() -> BunchedRing {
    BunchedRing::new(delpezzo_pres(), vec![wcone(2, 5)]).unwrap()
}

fn delpezzo_model() -> Model {
    Model::new(delpezzo(), Some(p1()), Some(wcone(2, 3))).unwrap()
}

fn delpezzo_value(z: &[i64]) -> i64 {
    z[0] * z[1] + z[2] * z[2] + z[3] * z[4]
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * det(&minor);
                if j % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// `f` and `g` agree after renaming variables and scaling by a unit.
fn equivalent(f: &GradedPoly, g: &GradedPoly) -> bool {
    if f.nvars() != g.nvars() || f.num_terms() != g.num_terms() {
        return false;
    }
    let fterms: BTreeMap<Vec<u32>, BigRational> = f.terms().into_iter().map(|(c, e)| (e.to_vec(), c.clone())).collect();
    permutations(f.nvars()).into_iter().any(|perm| {
        let pg = g.permute(&perm);
        let gterms: BTreeMap<Vec<u32>, BigRational> =
            pg.terms().into_iter().map(|(c, e)| (e.to_vec(), c.clone())).collect();
        if !fterms.keys().eq(gterms.keys()) {
            return false;
        }
        let (e0, c0) = fterms.iter().next().unwrap();
        let ratio = &gterms[e0] / c0;
        fterms.iter().all(|(e, c)| c * &ratio == gterms[e])
    })
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Membership in a cone of the plane, by Carathéodory over pairs of generators.
fn in_plane_cone(gens: &[[i64; 2]], w: [i64; 2]) -> bool {
    if w == [0, 0] {
        return true;
    }
    for (i, &a) in gens.iter().enumerate() {
        if cross(a, w) == 0 && a[0] * w[0] + a[1] * w[1] > 0 {
            return true;
        }
        for &b in &gens[i + 1..] {
            let (a, b) = if cross(a, b) >= 0 { (a, b) } else { (b, a) };
            let c = cross(a, b);
            if c > 0 && cross(a, w) >= 0 && cross(w, b) >= 0 {
                return true;
            }
            if c == 0 && a[0] * b[0] + a[1] * b[1] < 0 && cross(a, w) == 0 {
                return true;
            }
        }
    }
    false
}

/// Whether some point with support exactly `mask` is a zero of `f`, searched
/// over the grid {-2,-1,1,2} on the support.
fn zero_with_support(f: fn(&[i64]) -> i64, r: usize, mask: u32) -> bool {
    let support: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
    const GRID: [i64; 4] = [-2, -1, 1, 2];
    (0..4usize.pow(support.len() as u32)).any(|mut code| {
        let mut z = vec![0; r];
        for &i in &support {
            z[i] = GRID[code % 4];
            code /= 4;
        }
        f(&z) == 0
    })
}

fn delpezzo_analysis() -> Check {
    let rep = variety_report(&delpezzo())?;
    ensure!(rep.dimension == 2, "dimension {}", rep.dimension);
    let singular: Vec<&FaceOfOrthant> = rep.strata.iter().filter(|s| !s.is_factorial).map(|s| &s.face).collect();
    ensure!(singular == [&face(&[2, 5])], "non-factorial strata {singular:?}");
    ensure!(
        rep.picard_index == Index::Finite(3.into()),
        "Picard index {}",
        rep.picard_index
    );
    // -K = w_1 + ... + w_5 - deg(T_1 T_2)
    let anti: Vec<i64> = (0..2)
        .map(|k| (1..=5).map(|i| weight(i)[k]).sum::<i64>() - weight(1)[k] - weight(2)[k])
        .collect();
    ensure!(
        rep.canonical.anticanonical.free() == zvec(&anti),
        "anticanonical {}",
        rep.canonical.anticanonical
    );
    ensure!(rep.canonical.gorenstein, "canonical class not Cartier");
    ensure!(rep.canonical.fano, "not Fano");
    let cov: BTreeSet<FaceOfOrthant> = rep.cov.iter().cloned().collect();
    let expected: BTreeSet<FaceOfOrthant> = [face(&[1, 4]), face(&[2, 5]), face(&[1, 2, 3]), face(&[3, 4, 5])].into();
    ensure!(cov == expected, "cov {:?}", rep.cov);
    Ok(format!(
        "dim 2, singular stratum {{2,5}}, Pic index 3, -K = {}",
        rep.canonical.anticanonical
    ))
}

fn torsion_example() -> Check {
    let k = AbelianGroup::new(1, vec![3.into()])?;
    let grading = GradingMap::from_rows(k, &[zvec(&[1; 6])], &[zvec(&[1, 2, 1, 2, 1, 2])])?;
    let att = Attestations {
        factorially_graded: true,
        ..Default::default()
    };
    let pres = CoxPresentation::new(grading, vec![poly("T1*T2 + T3*T4 + T5*T6", 6)], att)?;
    let b = BunchedRing::new(pres, vec![cone(&[&[1]])])?;
    let rep = variety_report(&b)?;
    let cl = &rep.class_group;
    ensure!(
        cl.rank() == 1 && cl.torsion_orders() == [BigInt::from(3)],
        "class group {cl}"
    );
    ensure!(rep.dimension == 4, "dimension {}", rep.dimension);
    let el = |a: i64, t: i64| cl.element_i64(&[a], &[t]).unwrap();
    ensure!(rep.picard.contains(&el(3, 0)), "(3, 0) not in Pic");
    for (a, t) in [(1, 0), (2, 0), (0, 1), (0, 2), (3, 1), (1, 1), (1, 2)] {
        ensure!(!rep.picard.contains(&el(a, t)), "({a}, {t}) in Pic");
    }
    ensure!(
        rep.picard_index == Index::Finite(9.into()),
        "Pic index {}",
        rep.picard_index
    );
    let s = rep
        .strata
        .iter()
        .find(|s| s.face == face(&[1, 3, 5]))
        .ok_or("{1,3,5} not relevant")?;
    ensure!(
        !s.is_factorial && s.dim == 2,
        "stratum {{1,3,5}}: factorial {} dim {}",
        s.is_factorial,
        s.dim
    );
    Ok("Cl = Z + Z/3, dim 4, Pic = (3Z, 0)".into())
}

fn git_fans() -> Check {
    let pres = delpezzo_pres();
    let weights: Vec<[i64; 2]> = (1..=5).map(weight).collect();
    let f_faces: Vec<u32> = (0..32).filter(|&m| zero_with_support(delpezzo_value, 5, m)).collect();
    let all_faces: Vec<u32> = (0..32).collect();
    let signature = |faces: &[u32], w: [i64; 2]| -> Vec<u32> {
        faces
            .iter()
            .copied()
            .filter(|&m| {
                let gens: Vec<[i64; 2]> = (0..5).filter(|i| m >> i & 1 == 1).map(|i| weights[i]).collect();
                in_plane_cone(&gens, w)
            })
            .collect()
    };

    // the arrangement: rays through the weights, ordered counterclockwise
    let mut rays: Vec<[i64; 2]> = weights.clone();
    rays.sort_by(|&a, &b| 0.cmp(&cross(a, b)));
    rays.dedup_by(|a, b| cross(*a, *b) == 0);
    ensure!(
        rays.windows(2).all(|p| cross(p[0], p[1]) > 0),
        "weight cone not pointed"
    );
    let cells: Vec<([i64; 2], [i64; 2])> = rays.windows(2).map(|p| (p[0], p[1])).collect();
    let chambers_of = |faces: &[u32]| -> (Vec<Cone>, Vec<usize>) {
        let mut chambers: Vec<([i64; 2], [i64; 2])> = Vec::new();
        let mut cell_chamber = Vec::new();
        let mut last: Option<Vec<u32>> = None;
        for &(a, b) in &cells {
            let sig = signature(faces, [a[0] + b[0], a[1] + b[1]]);
            if last.as_ref() == Some(&sig) {
                chambers.last_mut().unwrap().1 = b;
            } else {
                chambers.push((a, b));
                last = Some(sig);
            }
            cell_chamber.push(chambers.len() - 1);
        }
        (chambers.iter().map(|(a, b)| cone(&[a, b])).collect(), cell_chamber)
    };
    let (ring_oracle, ring_of_cell) = chambers_of(&f_faces);
    let (toric_oracle, toric_of_cell) = chambers_of(&all_faces);

    let ring = enumerate_chamber_fan(&OrbitConeSet::compute(&pres, DEFAULT_MAX_VARS)?)?;
    let toric = enumerate_chamber_fan(&OrbitConeSet::compute_toric(&pres, DEFAULT_MAX_VARS)?)?;
    ensure!(ring.chambers.len() == 3, "{} ring chambers", ring.chambers.len());
    ensure!(toric.chambers.len() == 4, "{} toric chambers", toric.chambers.len());
    let set = |v: &[Cone]| v.iter().cloned().collect::<BTreeSet<Cone>>();
    ensure!(
        set(&ring.chambers) == set(&ring_oracle),
        "ring chambers differ from the arrangement"
    );
    ensure!(
        set(&toric.chambers) == set(&toric_oracle),
        "toric chambers differ from the arrangement"
    );
    for t in &toric.chambers {
        ensure!(
            ring.chambers.iter().any(|c| c.contains_cone(t)),
            "toric chamber {t} not inside a ring chamber"
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut samples = 0;
    while samples < 10_000 {
        let w = [rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000)];
        if !in_plane_cone(&weights, w) || weights.iter().any(|&v| cross(v, w) == 0) {
            continue;
        }
        samples += 1;
        let cell = cells
            .iter()
            .position(|&(a, b)| cross(a, w) > 0 && cross(w, b) > 0)
            .ok_or("sample in no cell")?;
        let (a, b) = cells[cell];
        let mid = [a[0] + b[0], a[1] + b[1]];
        ensure!(
            signature(&f_faces, w) == signature(&f_faces, mid),
            "ring signature jumps inside a cell at {w:?}"
        );
        let wz = zvec(&w);
        let r = ring.chamber_containing(&wz).ok_or("sample outside the ring fan")?;
        let t = toric.chamber_containing(&wz).ok_or("sample outside the toric fan")?;
        ensure!(*r == ring_oracle[ring_of_cell[cell]], "ring chamber of {w:?}");
        ensure!(*t == toric_oracle[toric_of_cell[cell]], "toric chamber of {w:?}");
        ensure!(r.contains_cone(t), "refinement fails at {w:?}");
    }
    Ok(format!("3 ring and 4 toric chambers, {samples} samples classified"))
}

fn ambient_fans() -> Check {
    let pres = delpezzo_pres();
    let g = gale_transform(pres.grading());
    let u = unimodular_certificate(&g.p, &p1()).ok_or("no change of basis between the Gale duals")?;
    ensure!(u.mul(&g.p) == p1(), "certificate does not map P onto the given matrix");
    ensure!(det(u.rows()).abs() == BigInt::from(1), "certificate not unimodular");
    let sigma1: &[&[usize]] = &[&[1, 2, 3], &[1, 2, 5], &[1, 3, 4], &[1, 4, 5], &[2, 3, 5], &[3, 4, 5]];
    let sigma0: &[&[usize]] = &[&[1, 2, 3], &[1, 2, 5], &[2, 3, 5], &[1, 3, 5]];
    let cols = p1().columns();
    for (eta, expected) in [(wcone(2, 3), sigma1), (wcone(2, 4), sigma0)] {
        let fan = ambient_fan_in(&pres, &eta, &g.p, DEFAULT_MAX_VARS)?;
        let ours: BTreeSet<BTreeSet<ZVec>> = fan
            .maximal_cones()
            .iter()
            .map(|c| c.rays().iter().map(|v| u.mul_vec(v)).collect())
            .collect();
        let theirs: BTreeSet<BTreeSet<ZVec>> = expected
            .iter()
            .map(|idx| idx.iter().map(|&i| cols[i - 1].clone()).collect())
            .collect();
        ensure!(
            fan.maximal_cones().len() == expected.len(),
            "{} maximal cones for {eta}",
            fan.maximal_cones().len()
        );
        ensure!(ours == theirs, "fan of {eta} differs from the listed cones");
    }
    Ok(format!("6 and 4 maximal cones, certificate {:?}", u.rows()))
}

fn contraction() -> Check {
    let m = delpezzo_model();
    let cs = find_contractions(&m)?;
    let c = cs.iter().find(|c| c.index == 3).ok_or("no contraction of T4")?;
    ensure!(
        c.eta0 == wcone(2, 4) && c.eta1 == wcone(3, 2),
        "chamber pair {} / {}",
        c.eta0,
        c.eta1
    );
    let rec = contract(&m, c)?;
    let s = rec.stellar.as_ref().ok_or("no stellar data")?;
    let cols = p1().columns();
    let combo: ZVec = (0..3)
        .map(|k| 2 * &cols[0][k] + &cols[2][k] + 3 * &cols[4][k])
        .collect();
    ensure!(combo == cols[3], "v4 is not 2v1 + v3 + 3v5");
    ensure!(s.v_inf == cols[3], "center {:?}", s.v_inf);
    ensure!(s.a == [2, 0, 1, 3] && s.m_inf == BigInt::from(1), "stellar data {s}");
    let f0 = poly("T1*T2 + T3^2 + T4", 4);
    let (g, _) = contract_cox_relation(&poly("T1*T2 + T3^2 + T4*T5", 5), 3, s)?;
    ensure!(g == f0, "contracted relation {g}");
    ensure!(
        rec.after.presentation().relation() == Some(&f0),
        "model relation differs"
    );
    ensure!(
        variety_report(&rec.after.bunch)?.combinatorially_minimal,
        "endpoint not minimal"
    );
    Ok(format!(
        "T4 contracted, v4 = 2v1 + v3 + 3v5 with index {}, relation {g}",
        s.m_inf
    ))
}

fn resolution() -> Check {
    let m = delpezzo_model();
    let r1 = blow_up(&m, &zvec(&[0, -1, -1]))?;
    let s1 = r1.stellar.as_ref().ok_or("no stellar data")?;
    ensure!(s1.m_inf == BigInt::from(3), "first index {}", s1.m_inf);
    let pulled = r1.pullback.as_ref().ok_or("no pullback")?;
    ensure!(*pulled == poly("T1*T2 + T3^2*T6^3 + T4*T5", 6), "pullback {pulled}");
    ensure!(
        r1.after.presentation().relation() == Some(&poly("T1*T2 + T3^2*T6 + T4*T5", 6)),
        "first relation"
    );
    let r2 = blow_up(&r1.after, &zvec(&[1, -1, -1]))?;
    let s2 = r2.stellar.as_ref().ok_or("no stellar data")?;
    ensure!(s2.m_inf == BigInt::from(2), "second index {}", s2.m_inf);
    ensure!(
        r2.after.presentation().relation() == Some(&poly("T1*T2 + T3^2*T6 + T4*T5", 7)),
        "second relation"
    );
    let q2 = q(&[
        &[1, -1, 0, -1, 1, 0, 0],
        &[0, 1, 0, 0, 1, 1, 0],
        &[1, 0, 1, 0, 1, -1, 0],
        &[0, 0, 0, -1, 1, 0, 1],
    ]);
    let grading = r2.after.presentation().grading();
    ensure!(grading.source_rank() == 7, "{} variables", grading.source_rank());
    ensure!(
        grading.kernel_basis() == q2.kernel_basis(),
        "relation lattice differs from the listed grading"
    );
    Ok("indices 3 then 2, final relation T1*T2 + T3^2*T6 + T4*T5".into())
}

fn random_quadric(rng: &mut ChaCha8Rng) -> (GradedPoly, usize) {
    let r = rng.gen_range(4..=6);
    let mut vars: Vec<usize> = (0..r).collect();
    vars.shuffle(rng);
    let mut terms = Vec::new();
    let mut k = 0;
    while terms.len() < 3 || (k < vars.len() && rng.gen_bool(0.3)) {
        if k >= vars.len() {
            break;
        }
        let mut e = vec![0u32; r];
        if k + 1 < vars.len() && rng.gen_bool(0.6) {
            e[vars[k]] = 1;
            e[vars[k + 1]] = 1;
            k += 2;
        } else {
            e[vars[k]] = 2;
            k += 1;
        }
        let c = *[-2i64, -1, 1, 2, 3].choose(rng).unwrap();
        terms.push((BigRational::from_integer(c.into()), e));
    }
    (GradedPoly::new(r, terms).unwrap(), r)
}

fn round_trips() -> Check {
    // the modifications of the worked examples, on the models
    let m = delpezzo_model();
    let f0 = m.presentation().relation().unwrap().clone();
    let r1 = blow_up(&m, &zvec(&[0, -1, -1]))?;
    let back = contract_variable(&r1.after, 5)?;
    ensure!(
        equivalent(back.after.presentation().relation().unwrap(), &f0),
        "first blow-up does not contract back"
    );
    let f1 = r1.after.presentation().relation().unwrap().clone();
    let r2 = blow_up(&r1.after, &zvec(&[1, -1, -1]))?;
    let back = contract_variable(&r2.after, 6)?;
    ensure!(
        equivalent(back.after.presentation().relation().unwrap(), &f1),
        "second blow-up does not contract back"
    );
    let c = contract_variable(&m, 3)?;
    let x0 = c.after.presentation().relation().unwrap().clone();
    let up = blow_up(&c.after, &p1().column(3))?;
    ensure!(
        equivalent(up.after.presentation().relation().unwrap(), &f0),
        "blowing up v4 does not restore f"
    );
    let i = up.variable.ok_or("no new variable")?;
    let down = contract_variable(&up.after, i)?;
    ensure!(
        equivalent(down.after.presentation().relation().unwrap(), &x0),
        "contraction cycle differs"
    );
    for rec in [&r1, &r2, &up] {
        let s = rec.stellar.as_ref().unwrap();
        let before = rec.before.presentation().relation().unwrap();
        let after = rec.after.presentation().relation().unwrap();
        let (g, _) = contract_cox_relation(after, after.nvars() - 1, s)?;
        ensure!(g == *before, "relation round trip fails for {s}");
    }

    // randomized admissible quadrics
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut passed, mut attempts) = (0, 0);
    while passed < 24 {
        attempts += 1;
        ensure!(attempts < 10_000, "too few admissible fixtures");
        let (f, r) = random_quadric(&mut rng);
        let pres = CoxPresentation::new(q(&[&vec![1; r]]), vec![f.clone()], Attestations::default())?;
        let sigma0: Vec<usize> = (0..r).filter(|_| rng.gen_bool(0.5)).collect();
        if sigma0.is_empty() {
            continue;
        }
        let a: Vec<u64> = (0..r)
            .map(|j| if sigma0.contains(&j) { rng.gen_range(1..=3) } else { 0 })
            .collect();
        let s = StellarData {
            sigma0,
            v_inf: zvec(&[0]),
            a,
            m_inf: rng.gen_range(1..=3).into(),
        };
        if check_admissible(&pres, &s).is_err() {
            continue;
        }
        let Ok((f1, k0)) = blowup_cox_relation(&f, &s) else {
            continue;
        };
        let (g, c) = contract_cox_relation(&f1, r, &s)?;
        ensure!(equivalent(&g, &f), "{f} came back as {g} via {s}");
        ensure!(c == -BigInt::from(k0), "lift degree {c} for shift {k0}");
        passed += 1;
    }
    Ok(format!("3 worked modifications and {passed} random quadrics"))
}

fn snf_identities(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..200 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=5));
        let rows: Vec<ZVec> = (0..m)
            .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect())
            .collect();
        let a = IntMatrix::from_rows(rows.clone(), n);
        let s = smith_normal_form(&a);
        ensure!(s.u.mul(&a).mul(&s.v) == s.d, "U A V != D for {rows:?}");
        ensure!(det(s.u.rows()).abs() == BigInt::from(1), "U not unimodular");
        ensure!(det(s.v.rows()).abs() == BigInt::from(1), "V not unimodular");
        for i in 0..m {
            for j in 0..n {
                ensure!(i == j || s.d.get(i, j).is_zero(), "D not diagonal");
            }
        }
        // d_1 ... d_k = gcd of the k-minors
        let d = s.diagonal();
        let mut prod = BigInt::from(1);
        for k in 1..=m.min(n) {
            prod *= d.get(k - 1).cloned().unwrap_or_default();
            ensure!(!prod.is_negative(), "negative invariant factor");
            let mut g = BigInt::zero();
            for r in subsets(m, k) {
                for c in subsets(n, k) {
                    let minor: Vec<ZVec> = r
                        .iter()
                        .map(|&i| c.iter().map(|&j| rows[i][j].clone()).collect())
                        .collect();
                    g = g.gcd(&det(&minor));
                }
            }
            ensure!(prod == g, "determinantal divisor {k} of {rows:?}");
        }
    }
    Ok("200 matrices".into())
}

fn random_cone(rng: &mut ChaCha8Rng, d: usize, pointed: bool) -> Vec<ZVec> {
    let count = rng.gen_range(1..=8);
    (0..count)
        .map(|_| {
            (0..d)
                .map(|k| {
                    BigInt::from(if pointed && k == 0 {
                        rng.gen_range(1..=3)
                    } else {
                        rng.gen_range(-3..=3)
                    })
                })
                .collect()
        })
        .collect()
}

fn dual_of_dual(rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..150 {
        let d = rng.gen_range(2..=4);
        let gens = random_cone(rng, d, false);
        let c = Cone::generated_by(d, &gens)?;
        let dual = c.dual();
        for y in dual.all_generators() {
            for g in &gens {
                let p: BigInt = y.iter().zip(g).map(|(a, b)| a * b).sum();
                ensure!(!p.is_negative(), "dual generator negative on a generator");
            }
        }
        ensure!(dual.dual() == c, "dual of dual differs for {c}");
    }
    Ok("150 cones".into())
}

/// Faces of a pointed full-dimensional cone as sets of generator indices:
/// facets from hyperplanes through `d - 1` generators, then intersections.
fn brute_force_faces(gens: &[ZVec], d: usize) -> BTreeSet<BTreeSet<usize>> {
    let mut facets: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for sub in subsets(gens.len(), d - 1) {
        let normal: ZVec = (0..d)
            .map(|i| {
                let minor: Vec<ZVec> = sub
                    .iter()
                    .map(|&s| (0..d).filter(|&k| k != i).map(|k| gens[s][k].clone()).collect())
                    .collect();
                if i % 2 == 0 {
                    det(&minor)
                } else {
                    -det(&minor)
                }
            })
            .collect();
        if normal.iter().all(Zero::is_zero) {
            continue;
        }
        let vals: Vec<BigInt> = gens
            .iter()
            .map(|g| g.iter().zip(&normal).map(|(a, b)| a * b).sum())
            .collect();
        if vals.iter().all(|v| !v.is_negative()) || vals.iter().all(|v| !v.is_positive()) {
            facets.insert((0..gens.len()).filter(|&j| vals[j].is_zero()).collect());
        }
    }
    let mut faces: BTreeSet<BTreeSet<usize>> = [(0..gens.len()).collect()].into();
    faces.extend(facets.iter().cloned());
    loop {
        let mut new = Vec::new();
        for a in &faces {
            for b in &facets {
                let m: BTreeSet<usize> = a.intersection(b).copied().collect();
                if !faces.contains(&m) {
                    new.push(m);
                }
            }
        }
        if new.is_empty() {
            return faces;
        }
        faces.extend(new);
    }
}

fn face_enumeration(rng: &mut ChaCha8Rng) -> Check {
    let mut tested = 0;
    while tested < 150 {
        let d = rng.gen_range(2..=4);
        let gens = random_cone(rng, d, true);
        let c = Cone::generated_by(d, &gens)?;
        if !c.is_full_dimensional() {
            continue;
        }
        tested += 1;
        let ours: BTreeSet<BTreeSet<usize>> = c
            .all_faces()
            .iter()
            .map(|f| (0..gens.len()).filter(|&j| f.contains(&gens[j])).collect())
            .collect();
        ensure!(c.all_faces().len() == ours.len(), "repeated faces of {c}");
        ensure!(
            ours == brute_force_faces(&gens, d),
            "faces of {c} differ from brute force"
        );
    }
    Ok(format!("{tested} cones"))
}

fn f_faces() -> Check {
    let pres = delpezzo_pres();
    let mut count = 0;
    for mask in 0..32u32 {
        let f = FaceOfOrthant::from_mask(mask.into(), 5);
        let expected = zero_with_support(delpezzo_value, 5, mask);
        ensure!(pres.is_f_face(&f)? == expected, "face {f}: oracle says {expected}");
        count += usize::from(expected);
    }
    Ok(format!("32 faces, {count} F-faces"))
}

/// `x` lies in the simplicial full-dimensional cone spanned by `rays` (Cramer's rule).
fn in_simplicial(rays: &[ZVec], x: &[i64]) -> bool {
    let x: ZVec = zvec(x);
    let base: Vec<ZVec> = (0..3).map(|k| rays.iter().map(|r| r[k].clone()).collect()).collect();
    let d = det(&base);
    (0..3).all(|j| {
        let mut m = base.clone();
        for k in 0..3 {
            m[k][j] = x[k].clone();
        }
        let dj = det(&m);
        dj.is_zero() || dj.signum() == d.signum()
    })
}

fn support_oracle(fan: &Fan, x: &[i64]) -> bool {
    fan.maximal_cones().iter().any(|c| in_simplicial(c.rays(), x))
}

fn support_preservation(rng: &mut ChaCha8Rng) -> Check {
    let rays = p1().columns();
    let complete = Fan::new(
        3,
        &rays,
        &[
            vec![0, 1, 2],
            vec![0, 1, 4],
            vec![0, 2, 3],
            vec![0, 3, 4],
            vec![1, 2, 4],
            vec![2, 3, 4],
        ],
    )?;
    let partial = Fan::new(3, &rays, &[vec![0, 2, 3], vec![0, 1, 2]])?;
    let cases = [
        (complete.clone(), zvec(&[0, -1, -1])),
        (stellar_subdivide(&complete, &zvec(&[0, -1, -1]))?, zvec(&[1, -1, -1])),
        (partial, zvec(&[0, -1, -2])),
    ];
    let mut inside = 0;
    for (fan, v) in &cases {
        let sub = stellar_subdivide(fan, v)?;
        ensure!(
            sub.maximal_cones()
                .iter()
                .all(|c| c.rays().len() == 3 && c.is_full_dimensional()),
            "non-simplicial"
        );
        for _ in 0..1000 {
            let x: Vec<i64> = (0..3).map(|_| rng.gen_range(-20..=20)).collect();
            let before = support_oracle(fan, &x);
            ensure!(
                before == support_oracle(&sub, &x),
                "support changes at {x:?} subdividing at {v:?}"
            );
            ensure!(
                sub.support_contains(&zvec(&x)) == before,
                "support test disagrees at {x:?}"
            );
            inside += usize::from(before);
        }
    }
    Ok(format!("3 subdivisions x 1000 points, {inside} inside"))
}

fn kernel_properties() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let parts = [
        snf_identities(&mut rng)?,
        dual_of_dual(&mut rng)?,
        face_enumeration(&mut rng)?,
        f_faces()?,
        support_preservation(&mut rng)?,
    ];
    Ok(parts.join("; "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("del Pezzo analysis", delpezzo_analysis),
        ("torsion example", torsion_example),
        ("GIT fans", git_fans),
        ("ambient fans", ambient_fans),
        ("contraction", contraction),
        ("resolution", resolution),
        ("blow-up/contract round trip", round_trips),
        ("kernel properties", kernel_properties),
    ];
    let start = Instant::now();
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{ms} ms] {detail}", n + 1),
            Err(e) => {
                failures += 1;
                println!("criterion {} ({name}): FAIL [{ms} ms] {e}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {}/8 passed in {:.1} s",
        8 - failures,
        start.elapsed().as_secs_f64()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
