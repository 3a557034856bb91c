package edu.ncsu.csc.itrust.action;

/**
 * Shows the records of the current patient.
 */
public class PatientAction {
	private long patient;

	public PatientAction(long patient) {
		this.patient = patient;
	}

	public String viewPatient() {
		return String.valueOf(patient);
	}

	public void editPatient(String name) {
		update(patient, name);
	}
}
