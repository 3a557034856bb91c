package edu.ncsu.csc.itrust.dao;

import java.util.List;

/**
 * Lists each prescription and immunization of the patient.
 */
public class PrescriptionDAO {
	private DAOFactory factory;

	public List<Prescription> getPrescriptions(long patient) throws DBException {
		return factory.prescriptions(patient);
	}

	public List<Immunization> getImmunizations(long patient) throws DBException {
		return factory.immunizations(patient);
	}
}
