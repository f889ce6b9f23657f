use num_complex::Complex64;

// Gauss-Legendre nodes and weights on [-1, 1], regenerated by
// tools/gen_constants.py (22 digits, rounded to f64).
const GL8: [(f64, f64); 8] = [
    (-0.9602898564975362, 0.10122853629037626),
    (-0.7966664774136267, 0.22238103445337447),
    (-0.5255324099163290, 0.31370664587788729),
    (-0.1834346424956498, 0.36268378337836198),
    (0.1834346424956498, 0.36268378337836198),
    (0.5255324099163290, 0.31370664587788729),
    (0.7966664774136267, 0.22238103445337447),
    (0.9602898564975362, 0.10122853629037626),
];

const GL16: [(f64, f64); 16] = [
    (-0.9894009349916499, 0.027152459411754095),
    (-0.9445750230732326, 0.062253523938647893),
    (-0.8656312023878317, 0.095158511682492785),
    (-0.7554044083550030, 0.124628971255533872),
    (-0.6178762444026438, 0.149595988816576732),
    (-0.4580167776572274, 0.169156519395002538),
    (-0.2816035507792589, 0.182603415044923589),
    (-0.0950125098376374, 0.189450610455068496),
    (0.0950125098376374, 0.189450610455068496),
    (0.2816035507792589, 0.182603415044923589),
    (0.4580167776572274, 0.169156519395002538),
    (0.6178762444026438, 0.149595988816576732),
    (0.7554044083550030, 0.124628971255533872),
    (0.8656312023878317, 0.095158511682492785),
    (0.9445750230732326, 0.062253523938647893),
    (0.9894009349916499, 0.027152459411754095),
];

const GL32: [(f64, f64); 32] = [
    (-0.9972638618494816, 0.0070186100094700966),
    (-0.9856115115452683, 0.0162743947309056706),
    (-0.9647622555875064, 0.0253920653092620595),
    (-0.9349060759377397, 0.0342738629130214331),
    (-0.8963211557660521, 0.0428358980222266807),
    (-0.8493676137325700, 0.0509980592623761762),
    (-0.7944837959679424, 0.0586840934785355471),
    (-0.7321821187402897, 0.0658222227763618468),
    (-0.6630442669302152, 0.0723457941088485062),
    (-0.5877157572407623, 0.0781938957870703065),
    (-0.5068999089322294, 0.0833119242269467552),
    (-0.4213512761306353, 0.0876520930044038111),
    (-0.3318686022821277, 0.0911738786957638847),
    (-0.2392873622521371, 0.0938443990808045656),
    (-0.1444719615827965, 0.0956387200792748594),
    (-0.0483076656877383, 0.0965400885147278006),
    (0.0483076656877383, 0.0965400885147278006),
    (0.1444719615827965, 0.0956387200792748594),
    (0.2392873622521371, 0.0938443990808045656),
    (0.3318686022821277, 0.0911738786957638847),
    (0.4213512761306353, 0.0876520930044038111),
    (0.5068999089322294, 0.0833119242269467552),
    (0.5877157572407623, 0.0781938957870703065),
    (0.6630442669302152, 0.0723457941088485062),
    (0.7321821187402897, 0.0658222227763618468),
    (0.7944837959679424, 0.0586840934785355471),
    (0.8493676137325700, 0.0509980592623761762),
    (0.8963211557660521, 0.0428358980222266807),
    (0.9349060759377397, 0.0342738629130214331),
    (0.9647622555875064, 0.0253920653092620595),
    (0.9856115115452683, 0.0162743947309056706),
    (0.9972638618494816, 0.0070186100094700966),
];

/// Nodes and weights on [-1, 1] for order 8, 16 or 32.
pub fn gl_nodes(order: usize) -> &'static [(f64, f64)] {
    match order {
        8 => &GL8,
        16 => &GL16,
        32 => &GL32,
        other => panic!("unsupported Gauss-Legendre order {other} (must be 8, 16 or 32)"),
    }
}

/// Composite Gauss-Legendre with fixed panel width; deterministic node set.
pub fn gl_panel_integral<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    panel_width: f64,
    order: usize,
) -> f64 {
    assert!(a < b, "gl_panel_integral requires a < b");
    assert!(panel_width > 0.0);
    let nodes = gl_nodes(order);
    let n_panels = ((b - a) / panel_width).ceil().max(1.0) as usize;
    let w = (b - a) / n_panels as f64;
    let mut acc = 0.0;
    for p in 0..n_panels {
        let lo = a + p as f64 * w;
        let mid = lo + 0.5 * w;
        let half = 0.5 * w;
        let mut panel = 0.0;
        for &(x, wt) in nodes {
            panel += wt * f(mid + half * x);
        }
        acc += panel * half;
    }
    acc
}

/// Complex-valued variant of [`gl_panel_integral`].
pub fn gl_panel_integral_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    panel_width: f64,
    order: usize,
) -> Complex64 {
    assert!(a < b, "gl_panel_integral requires a < b");
    let nodes = gl_nodes(order);
    let n_panels = ((b - a) / panel_width).ceil().max(1.0) as usize;
    let w = (b - a) / n_panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..n_panels {
        let lo = a + p as f64 * w;
        let mid = lo + 0.5 * w;
        let half = 0.5 * w;
        let mut panel = Complex64::new(0.0, 0.0);
        for &(x, wt) in nodes {
            panel += wt * f(mid + half * x);
        }
        acc += panel * half;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn unit_constant() {
        assert_relative_eq!(gl_panel_integral(|_| 1.0, 0.0, 1.0, 0.25, 8), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn sine_closed_form() {
        let v = gl_panel_integral(f64::sin, 0.0, std::f64::consts::PI, std::f64::consts::PI / 8.0, 16);
        assert_relative_eq!(v, 2.0, epsilon = 1e-12);
    }

    #[test]
    fn weights_sum_to_two() {
        for order in [8, 16, 32] {
            let s: f64 = gl_nodes(order).iter().map(|&(_, w)| w).sum();
            assert_relative_eq!(s, 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn polynomial_exactness() {
        // order-8 GL integrates degree-15 polynomials exactly
        let v = gl_panel_integral(|x| x.powi(14), -1.0, 1.0, 2.0, 8);
        assert_relative_eq!(v, 2.0 / 15.0, max_relative = 1e-13);
    }
}
