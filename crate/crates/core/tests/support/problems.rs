pub const RELLICH: &str = r#"{
  "variables": ["x1", "x2"],
  "matrix": [["2*x1", "x1+x2"], ["x1+x2", "2*x2"]],
  "task": "split",
  "seed": 7
}"#;

pub const BLOWUP: &str = r#"{
  "variables": ["x1", "x2"],
  "matrix": [["2*x1*x2", "x1*x2+x2"], ["x1*x2+x2", "2*x2"]],
  "task": "diagonalize",
  "order": 6,
  "seed": 7
}"#;

pub const HYPERBOLIC: &str = r#"{
  "variables": ["x1", "x2"],
  "constants": [{"name": "s", "min_poly": "s^2-2", "interval": ["1", "2"]}],
  "matrix": [["-x1", "x2", "0"], ["x2", "-x1", "s*x2"], ["0", "s*x2", "2*x1"]],
  "task": "split",
  "seed": 7
}"#;

pub const ADAM: &str = r#"{
  "variables": ["x1", "x2"],
  "matrix": [["x1^2", "x1*x2"], ["x1*x2", "x2^2"]],
  "task": "diagonalize",
  "seed": 7
}"#;

pub const ROTATION: &str = r#"{
  "variables": ["x1", "x2"],
  "matrix": [["(x1+x2)/2", "(-i*(x1-x2))/2"], ["(i*(x1-x2))/2", "(x1+x2)/2"]],
  "task": "diagonalize",
  "seed": 7
}"#;

pub const ALL: [(&str, &str); 5] =
    [("rellich", RELLICH), ("blowup", BLOWUP), ("hyperbolic", HYPERBOLIC), ("adam", ADAM), ("rotation", ROTATION)];

pub const BLOWUP_CLOSURE: [&str; 6] = [
    "2*x1*x2-y1-y2+2*x2",
    "y1^2+6*y1*y2+y2^2-8*y1*x2-8*y2*x2+16*x2^2",
    "w_0_1*x2+y2",
    "2*w_0_1*y2+y1*x1+5*y2*x1-3*y1+y2+8*x2",
    "2*w_0_1*y1-y1*x1-y2*x1+3*y1+3*y2-8*x2",
    "w_0_1^2+2*w_0_1*x1+2*w_0_1-x1^2+2*x1-1",
];

pub const BLOWUP_MAXIMAL: [&str; 5] = ["x2", "x1", "y2", "y1", "w_0_1^2+2*w_0_1-1"];

pub const HYPERBOLIC_CLOSURE: [&str; 10] = [
    "y1+y2+y3",
    "y2^2+y2*y3+y3^2-3*x1^2-3*x2^2",
    "w_0_1*x2-y2*y3-y2*x1-y3*x1-x1^2",
    "w_0_1*y2+w_0_1*y3-w_0_1*x1-3*x1*x2",
    "w_0_0*x2-y3^2+y3*x1+2*x1^2",
    "w_0_0*y3+w_0_0*x1-3*y3*x2",
    "w_0_0*y2+w_0_0*x1-w_0_1*y3+2*w_0_1*x1",
    "w_0_1^2+3*y2*y3-3*x1^2",
    "w_0_0*w_0_1-3*y2*y3-3*y3*x1",
    "w_0_0^2-3*y3^2+6*y3*x1",
];
