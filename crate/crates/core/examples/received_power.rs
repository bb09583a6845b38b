//! Channel vector, MRT beamforming and the inverse-square power law.

use num_complex::Complex64;
use wpt_placement::channel::{
    beamformed_power, channel_vector, mrt_beamformer, near_field_indicator, received_power,
};
use wpt_placement::{Placement, RadioParams, ReceiverPoint, Room};

fn main() {
    let room = Room::new(4.0, 2.0, 2.5, 0.3).expect("room");
    let placement = Placement::symmetric_pair(&room, 1.1).expect("placement");
    let rx = ReceiverPoint::new(0.7, 1.5, -1.0);

    for wavelength in [0.0107, 0.125] {
        let radio = RadioParams::new(wavelength, 1e-3, 1.0).expect("radio");
        let g = channel_vector(&placement, room.z0(), &rx, &radio).expect("channel");
        let s = mrt_beamformer(&g, radio.tx_power()).expect("mrt");
        // equal-phase split of the same power, for comparison
        let naive = vec![Complex64::new((radio.tx_power() / 2.0).sqrt(), 0.0); 2];
        println!(
            "lambda={wavelength:<7} MRT={:.6e} W  formula={:.6e} W  equal-phase={:.6e} W",
            beamformed_power(&g, &s),
            received_power(&placement, room.z0(), &rx, &radio).expect("power"),
            beamformed_power(&g, &naive)
        );
        let nf = near_field_indicator(&room, &placement, wavelength);
        println!(
            "  aperture {:.2} m, Fraunhofer distance {:.1} m, room inside near field: {}",
            nf.aperture_m, nf.fraunhofer_distance_m, nf.room_within_near_field
        );
    }
}
