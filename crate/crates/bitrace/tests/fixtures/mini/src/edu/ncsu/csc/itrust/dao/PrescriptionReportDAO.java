package edu.ncsu.csc.itrust.dao;

import java.util.List;

/**
 * Stores prescription reports for each patient.
 */
public class PrescriptionReportDAO {
	private DAOFactory factory;

	public List<PrescriptionReport> getPrescriptionReports(long patient) throws DBException {
		return factory.query(patient);
	}

	public void addPrescription(PrescriptionReport report) throws DBException {
		factory.insert(report);
	}
}
